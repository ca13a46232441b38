"""Unit tests for gfsolver."""
