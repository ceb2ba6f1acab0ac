"""graph-core: certificate verification against the exhaustive oracle, doc format."""

from __future__ import annotations

import pytest

from dibs.certificates import (
    BipartiteCert,
    CertificateParseError,
    ExtractionTrace,
    cert_from_text,
    cert_to_text,
    verify_bipartite_cert,
)
from dibs.rng import stream

from oracles import brute_check_cert, complete, cycle, random_graph


def _cert(side_a, side_b, claimed, algorithm="test", seed=0, **stats):
    return BipartiteCert(
        side_a=tuple(side_a),
        side_b=tuple(side_b),
        claimed_min_degree=claimed,
        algorithm=algorithm,
        trace=ExtractionTrace(seed=seed, retries=0, stage_stats=dict(stats)),
    )


def test_c5_hand_example():
    rep = verify_bipartite_cert(cycle(5), _cert([0, 2], [1], 1))
    assert rep.ok
    assert rep.achieved_min_degree == 1


def test_k3_fails_with_witness():
    rep = verify_bipartite_cert(complete(3), _cert([0], [1, 2], 1))
    assert not rep.ok
    assert any("edge_within_side_b edge=1-2" in f for f in rep.failures)


def test_overlap_fails():
    rep = verify_bipartite_cert(cycle(5), _cert([0, 1], [1], 0))
    assert not rep.ok
    assert any("overlap vertex=1" in f for f in rep.failures)


def test_out_of_range_fails():
    rep = verify_bipartite_cert(cycle(5), _cert([0], [9], 0))
    assert not rep.ok
    assert any("out_of_range vertex=9" in f for f in rep.failures)


def test_low_degree_names_vertex():
    g = cycle(6)
    rep = verify_bipartite_cert(g, _cert([0, 2], [1], 2))
    assert not rep.ok
    assert any("low_cross_degree vertex=0" in f for f in rep.failures)


def test_matches_exhaustive_checker_on_corpus():
    for seed in range(300):
        g = random_graph(seed, n_max=8)
        st = stream(seed, 0xCE57)
        verts = list(range(g.n))
        st.shuffle(verts)
        ka = st.randint(0, g.n)
        kb = st.randint(0, g.n - ka)
        side_a, side_b = verts[:ka], verts[ka : ka + kb]
        claimed = st.randint(0, 3)
        rep = verify_bipartite_cert(g, _cert(side_a, side_b, claimed))
        assert rep.ok == brute_check_cert(g, side_a, side_b, claimed)


def test_doc_round_trip():
    cert = _cert([0, 2], [1], 1, algorithm="sparse", seed=99, achieved=2, X=5)
    text = cert_to_text(cert)
    lines = text.splitlines()
    assert lines[0] == "dibs-certificate v1"
    assert lines[1].startswith("algorithm:") and lines[3] == "guarantee: 1"
    back = cert_from_text(text)
    assert back.side_a == cert.side_a and back.side_b == cert.side_b
    assert back.claimed_min_degree == 1 and back.algorithm == "sparse"
    assert back.trace.stage_stats["X"] == 5
    assert back.achieved_min_degree == 2
    assert cert_to_text(back) == text


def test_doc_parse_errors():
    with pytest.raises(CertificateParseError):
        cert_from_text("not a certificate\n")
    with pytest.raises(CertificateParseError):
        cert_from_text("dibs-certificate v1\nalgorithm: x\n")
