"""gl0 knot homology of braid closures and its (q -> 1) Bockstein spectral sequence."""

__version__ = "0.1.0"
