"""happier: explore annotated protein interaction subgraphs around a center
protein, track exploration sessions, and analyze session transcripts as
linkographs."""

__version__ = "0.1.0"
