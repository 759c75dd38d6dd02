"""Tests for seed derivation, certificate digests and the worker pool."""

import hashlib
import json
from fractions import Fraction

import pytest

from flagforge.hashing import canonical_json, certificate_digest
from flagforge.models.certificate import certificate_payload
from flagforge.parallel import WorkerPool, default_pool
from flagforge.seeds import derive_seed, seeded_rng
from flagforge.verification import goodman_certificate


class TestDeriveSeed:
    def test_deterministic(self) -> None:
        assert derive_seed(7, "identity-audit") == derive_seed(7, "identity-audit")

    def test_base_seed_matters(self) -> None:
        assert derive_seed(7, "identity-audit") != derive_seed(8, "identity-audit")

    def test_label_matters(self) -> None:
        assert derive_seed(7, "identity-audit") != derive_seed(7, "optimizer")

    def test_salt_changes_seed(self) -> None:
        assert derive_seed(7, "d", salt="0") != derive_seed(7, "d", salt="1")

    def test_returns_32bit_int(self) -> None:
        assert 0 <= derive_seed("abc", "d") < 2**32

    def test_seeded_rng_streams(self) -> None:
        first = [seeded_rng(1, "hosts").random() for _ in range(3)]
        second = [seeded_rng(1, "hosts").random() for _ in range(3)]
        assert first == second


class TestCertificateDigest:
    def test_stable(self) -> None:
        first = certificate_digest(certificate_payload(goodman_certificate()))
        second = certificate_digest(certificate_payload(goodman_certificate()))
        assert first == second
        assert len(first) == 64

    def test_content_sensitive(self) -> None:
        quarter = certificate_payload(goodman_certificate())
        fifth = certificate_payload(goodman_certificate(Fraction(1, 5)))
        assert certificate_digest(quarter) != certificate_digest(fifth)

    def test_key_order_irrelevant(self) -> None:
        payload = certificate_payload(goodman_certificate())
        reversed_payload = dict(reversed(list(payload.items())))
        assert certificate_digest(payload) == certificate_digest(reversed_payload)

    def test_single_hash_of_canonical_json(self) -> None:
        payload = certificate_payload(goodman_certificate())
        text = json.dumps(payload, sort_keys=True, separators=(",", ":"))
        assert canonical_json(payload) == text
        expected = hashlib.sha256(text.encode()).hexdigest()
        assert certificate_digest(payload) == expected


class TestWorkerPool:
    def test_rejects_zero_threads(self) -> None:
        with pytest.raises(ValueError):
            WorkerPool(threads=0)

    def test_serial_default(self) -> None:
        assert default_pool().threads == 1
        assert default_pool().map(abs, [-2, 3, -1]) == [2, 3, 1]

    def test_map_keeps_order(self) -> None:
        items = list(range(-20, 20))
        with WorkerPool(threads=2, chunksize=3) as pool:
            assert pool.map(abs, items) == [abs(x) for x in items]

    def test_starmap_matches_serial(self) -> None:
        jobs = [(base, 3, 1000) for base in range(25)]
        with WorkerPool(threads=2) as pool:
            parallel = pool.starmap(pow, jobs)
        assert parallel == default_pool().starmap(pow, jobs)
