"""Tests for pd_piag."""
