"""Command line front end of dfrac."""
