"""Combinatorics of right-angled Artin groups acting on disk systems.

The package decides word problems in right-angled Artin groups, searches
for induced subgraph embeddings, enumerates the ways a marked surface
splits along a four-cycle of disk boundaries, replays rule-based
non-embeddability arguments, and verifies explicit embedding
certificates.  See the README for the CLI surface.
"""
from __future__ import annotations

__version__ = "0.1.0"
