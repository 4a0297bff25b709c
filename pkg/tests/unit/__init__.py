# Unit tests.
