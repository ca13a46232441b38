"""End-to-end runs at desk scale."""
