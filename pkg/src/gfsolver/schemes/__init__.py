"""Spatial discretizations, boundary handling and time integration."""
