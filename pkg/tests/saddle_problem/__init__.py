"""Tests for saddle_problem."""
