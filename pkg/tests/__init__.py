"""Tests for specialsys."""
