"""Tests for bench_cli."""
