"""Tests for rankbound."""
