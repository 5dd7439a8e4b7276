"""JSON schemas shipped with dfrac."""
