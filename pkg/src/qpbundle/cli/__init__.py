"""Command line front end: parsers, verification suites, entry point."""
