# Tests package for netflux.
