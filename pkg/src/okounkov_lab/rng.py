"""Deterministic seed derivation for named random streams.

Every source of randomness in the toolkit flows from a single master seed
through named sub-streams, so fuzz failures replay exactly.  Derivation
hashes the textual stream name, avoiding Python's per-process string hash
salt.
"""

from __future__ import annotations

import hashlib


def derive_seed(*parts) -> int:
    """Stable 64-bit seed from a master seed and stream labels."""
    text = ":".join(str(p) for p in parts)
    digest = hashlib.sha256(text.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")
