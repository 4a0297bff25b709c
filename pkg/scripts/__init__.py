"""Runnable wrappers around the netflux packages."""
