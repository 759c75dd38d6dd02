"""Deterministic seeds for randomized audits.

Every randomized check derives its generator seed from the user seed plus a
label naming the check, so runs are reproducible and distinct checks draw
independent streams.
"""

from __future__ import annotations

import hashlib
import random
import struct


def derive_seed(base_seed: int | str, label: str, salt: str = "") -> int:
    """Derive a 32-bit seed from a base seed and a label.

    Args:
        base_seed: The user-supplied seed (e.g. the CLI ``--seed``).
        label: Name of the consumer (e.g. ``"identity-audit:5:3"``).
        salt: Optional extra input such as a round number.

    Returns:
        32-bit integer seed.
    """
    payload = f"{base_seed}:{label}:{salt}"
    h = hashlib.sha256(payload.encode()).digest()
    # first 4 bytes as unsigned 32-bit int
    return struct.unpack(">I", h[:4])[0]


def seeded_rng(base_seed: int | str, label: str, salt: str = "") -> random.Random:
    return random.Random(derive_seed(base_seed, label, salt))
