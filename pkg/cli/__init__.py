"""Command-line front end for convopoly."""
