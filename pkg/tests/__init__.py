"""Tests for gfsolver."""
