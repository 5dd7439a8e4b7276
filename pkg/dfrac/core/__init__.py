"""Configuration and error types shared by every dfrac module."""
