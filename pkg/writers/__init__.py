"""Writers package."""
