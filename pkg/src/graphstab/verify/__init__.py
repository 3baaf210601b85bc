"""Independent oracles, graph and formula families, and the executable law registry."""
