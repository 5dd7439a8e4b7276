"""Shared utilities for dfrac."""
