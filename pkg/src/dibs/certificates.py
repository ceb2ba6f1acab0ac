"""Bipartite-subgraph certificates: machine-checkable extraction records.

A certificate claims two disjoint independent sets such that every vertex has
at least ``claimed_min_degree`` neighbors across the bipartition.  The
verifier re-derives everything from the graph; it never trusts extractor
state.  Failures are report content (with a concrete witness), not errors.

Document format (fixed field order so diffs are stable):

    dibs-certificate v1
    algorithm: sparse
    seed: 7
    guarantee: 2
    achieved: 5
    side_a: 0 4 9
    side_b: 2 3
    trace.retries: 3
    trace.stat.<name>: <int>      (sorted by name)
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graphs import Graph

MAGIC = "dibs-certificate v1"


class CertificateParseError(ValueError):
    pass


@dataclass(frozen=True)
class ExtractionTrace:
    """Audit trail: seed, retry count, and named integer stage statistics."""

    seed: int
    retries: int
    stage_stats: dict[str, int] = field(default_factory=dict)


@dataclass(frozen=True)
class BipartiteCert:
    side_a: tuple[int, ...]
    side_b: tuple[int, ...]
    claimed_min_degree: int
    algorithm: str
    trace: ExtractionTrace

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted(self.side_a + self.side_b))

    @property
    def achieved_min_degree(self) -> int:
        return self.trace.stage_stats.get("achieved", self.claimed_min_degree)


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    failures: tuple[str, ...]
    achieved_min_degree: int
    cross_edges: int

    def __bool__(self) -> bool:
        return self.ok


def verify_bipartite_cert(g: Graph, cert: BipartiteCert) -> VerificationReport:
    """Check disjointness, independence of both sides, and the degree claim.

    Every failure carries a witness vertex or edge.  Vertex ranges are a
    precondition; out-of-range ids are reported as failures too so callers
    can map them to their own exit codes.
    """
    failures: list[str] = []
    a, b = set(cert.side_a), set(cert.side_b)
    for v in sorted(a | b):
        if not (0 <= v < g.n):
            failures.append(f"out_of_range vertex={v}")
    if failures:
        return VerificationReport(False, tuple(failures), 0, 0)
    overlap = a & b
    if overlap:
        failures.append(f"overlap vertex={min(overlap)}")
    for name, side in (("side_a", cert.side_a), ("side_b", cert.side_b)):
        mark = set(side)
        for v in sorted(mark):
            for w in g.adj[v]:
                if w > v and w in mark:
                    failures.append(f"edge_within_{name} edge={v}-{w}")
                    break
            else:
                continue
            break
    cross = 0
    achieved = None
    if not a and not b:
        failures.append("empty_certificate")
    for v in sorted(a | b):
        other = b if v in a else a
        dv = sum(1 for w in g.adj[v] if w in other)
        cross += dv
        achieved = dv if achieved is None else min(achieved, dv)
        if dv < cert.claimed_min_degree:
            failures.append(
                f"low_cross_degree vertex={v} degree={dv} claimed={cert.claimed_min_degree}"
            )
    if cert.claimed_min_degree >= 1 and (not a or not b):
        failures.append("empty_side_with_positive_claim")
    return VerificationReport(
        ok=not failures,
        failures=tuple(failures),
        achieved_min_degree=achieved or 0,
        cross_edges=cross // 2,
    )


def cert_to_text(cert: BipartiteCert) -> str:
    stats = dict(cert.trace.stage_stats)
    achieved = stats.pop("achieved", cert.claimed_min_degree)
    lines = [
        MAGIC,
        f"algorithm: {cert.algorithm}",
        f"seed: {cert.trace.seed}",
        f"guarantee: {cert.claimed_min_degree}",
        f"achieved: {achieved}",
        "side_a: " + " ".join(map(str, cert.side_a)),
        "side_b: " + " ".join(map(str, cert.side_b)),
        f"trace.retries: {cert.trace.retries}",
    ]
    lines.extend(f"trace.stat.{k}: {stats[k]}" for k in sorted(stats))
    return "\n".join(lines) + "\n"


def cert_from_text(text: str) -> BipartiteCert:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0].strip() != MAGIC:
        raise CertificateParseError(f"missing magic line {MAGIC!r}")
    fields: dict[str, str] = {}
    for ln in lines[1:]:
        if ":" not in ln:
            raise CertificateParseError(f"bad line {ln!r}")
        key, val = ln.split(":", 1)
        fields[key.strip()] = val.strip()
    try:
        algorithm = fields["algorithm"]
        seed = int(fields["seed"])
        guarantee = int(fields["guarantee"])
        achieved = int(fields["achieved"])
        side_a = tuple(int(x) for x in fields["side_a"].split())
        side_b = tuple(int(x) for x in fields["side_b"].split())
        retries = int(fields["trace.retries"])
    except (KeyError, ValueError) as exc:
        raise CertificateParseError(f"missing or malformed field: {exc}") from exc
    stats = {"achieved": achieved}
    for key, val in fields.items():
        if key.startswith("trace.stat."):
            try:
                stats[key[len("trace.stat.") :]] = int(val)
            except ValueError as exc:
                raise CertificateParseError(f"bad stat line {key}: {val}") from exc
    trace = ExtractionTrace(seed=seed, retries=retries, stage_stats=stats)
    return BipartiteCert(
        side_a=side_a,
        side_b=side_b,
        claimed_min_degree=guarantee,
        algorithm=algorithm,
        trace=trace,
    )


def load_cert(path: str) -> BipartiteCert:
    with open(path, "r", encoding="ascii") as fh:
        return cert_from_text(fh.read())


def save_cert(cert: BipartiteCert, path: str) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(cert_to_text(cert))
