"""Survey of unit existence over all 1944 (derivative spec, unit kind) cases.

Unit existence in a derivative never needs the derived table: with
D(x,y) = g(B(p(x), q(y))) for bijections p, q, g and B the
sigma-parastrophe,

  * a left unit exists   iff  g^-1 . q^-1  is a row of B,
  * a right unit exists  iff  g^-1 . p^-1  is a column of B,
  * a middle unit exists iff  q . p^-1     is a middle translation of B,

and rows/columns/middle translations of B are one of the three translation
families of the base square.  Every case therefore compiles to a single
probe (compose two of the seven translations at a, test membership in one
family); the scan evaluates active probes per (square, a) and keeps the
first failure in (order, stream index, a) order.

Certificates are built from the full derivative construction, independent
of the probe shortcut, so an unsound probe would surface as an impossible
certificate.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from importlib import resources
from typing import Iterable, Iterator, Mapping, Sequence

from .corpus import CorpusDescriptor, iter_corpus_rows
from .derivative import (
    CONVENTION_A,
    Convention,
    DerivativeSpec,
    TripleComponent,
    all_conventions,
    apply_derivative,
    enumerate_specs,
)
from .parastrophe import ParastropheSym, transfer_kind
from .qcore import QuasigroupError, from_table
from .units import UnitKind

Rows = tuple[tuple[int, ...], ...]


class SurveyError(Exception):
    pass


class MalformedCertificateError(SurveyError):
    def __init__(self, field: str, detail: str = ""):
        self.field = field
        super().__init__(f"malformed certificate: {field}" + (f" ({detail})" if detail else ""))


@dataclass(frozen=True)
class CaseId:
    spec: DerivativeSpec
    unit: UnitKind

    @property
    def token(self) -> str:
        return f"{self.spec.token}/{self.unit.token}"


@dataclass(frozen=True)
class Certificate:
    """A self-contained refutation of unit existence for one case.

    For every candidate element u there is one witness x at which the unit
    equation fails in the derivative of ``rows`` at ``a``.  Checkable
    without re-running any search.
    """

    rows: Rows
    a: int
    case: CaseId
    convention: Convention
    refutation: tuple[tuple[int, int], ...]  # (candidate, witness) pairs

    @property
    def order(self) -> int:
        return len(self.rows)


@dataclass(frozen=True)
class NoCounterexample:
    max_order_checked: int
    corpus: str


CaseStatus = "Certificate | NoCounterexample"


@dataclass(frozen=True)
class SurveyResult:
    convention: Convention
    corpus: CorpusDescriptor
    statuses: dict[CaseId, "Certificate | NoCounterexample"]


UNIT_ORDER = (UnitKind.LEFT, UnitKind.RIGHT, UnitKind.MIDDLE)


def all_cases() -> tuple[CaseId, ...]:
    """The 1944 cases in canonical order: spec order x (f, e, s)."""
    return tuple(
        CaseId(spec, unit) for spec in enumerate_specs() for unit in UNIT_ORDER
    )


# ---------------------------------------------------------------------------
# Probe compilation.
#
# Translations at a are indexed 0..6: E, L, Li, R, Ri, P, Pi.  A probe is
# (i, j, fam): compose translations i after j and test membership in family
# fam (0 = rows {L_u}, 1 = columns {R_u}, 2 = middle {P_u}).

_KIND_INDEX = {
    TripleComponent.E: 0,
    TripleComponent.L: 1,
    TripleComponent.LINV: 2,
    TripleComponent.R: 3,
    TripleComponent.RINV: 4,
    TripleComponent.P: 5,
    TripleComponent.PINV: 6,
}
_INV = (0, 2, 1, 4, 3, 6, 5)

_FAM_L, _FAM_R, _FAM_P = 0, 1, 2

# (family, test_inverse) of the rows / columns / middle translations of each
# parastrophe, expressed in base-square families.
_PS = ParastropheSym
_ROW_FAMILY = {
    _PS.ID: (_FAM_L, False),
    _PS.S12: (_FAM_R, False),
    _PS.S23: (_FAM_L, True),
    _PS.S132: (_FAM_P, False),
    _PS.S13: (_FAM_R, True),
    _PS.S123: (_FAM_P, True),
}
_COL_FAMILY = {
    _PS.ID: (_FAM_R, False),
    _PS.S12: (_FAM_L, False),
    _PS.S23: (_FAM_P, False),
    _PS.S132: (_FAM_L, True),
    _PS.S13: (_FAM_P, True),
    _PS.S123: (_FAM_R, True),
}
_MID_FAMILY = {
    _PS.ID: (_FAM_P, False),
    _PS.S12: (_FAM_P, True),
    _PS.S23: (_FAM_R, False),
    _PS.S132: (_FAM_R, True),
    _PS.S13: (_FAM_L, False),
    _PS.S123: (_FAM_L, True),
}

Probe = tuple[int, int, int]


def _effective_index(
    component: TripleComponent, sigma: ParastropheSym, conv: Convention, is_arg: bool
) -> int:
    """Index of the translation the component actually applies, at conv."""
    if component is TripleComponent.E:
        return 0
    kind = component.translation_kind
    if conv.translation_source == "parastrophe":
        kind = transfer_kind(kind, sigma)
    action = conv.arg_action if is_arg else conv.result_action
    if action == "inverse":
        kind = kind.inverse
    return _KIND_INDEX[TripleComponent(kind.token)]


def case_probe(case: CaseId, conv: Convention) -> Probe:
    """Compile a case to its single membership probe."""
    spec, unit = case.spec, case.unit
    ea = _effective_index(spec.triple.alpha, spec.sigma, conv, True)
    eb = _effective_index(spec.triple.beta, spec.sigma, conv, True)
    eg = _effective_index(spec.triple.gamma, spec.sigma, conv, False)
    if unit is UnitKind.LEFT:
        fam, inv = _ROW_FAMILY[spec.sigma]
        # h = g^-1 . q^-1 must be a row of B; test h or h^-1 = q . g
        return (eb, eg, fam) if inv else (_INV[eg], _INV[eb], fam)
    if unit is UnitKind.RIGHT:
        fam, inv = _COL_FAMILY[spec.sigma]
        return (ea, eg, fam) if inv else (_INV[eg], _INV[ea], fam)
    fam, inv = _MID_FAMILY[spec.sigma]
    # h = q . p^-1 must be a middle translation of B
    return (ea, _INV[eb], fam) if inv else (eb, _INV[ea], fam)


# ---------------------------------------------------------------------------
# The scan.  Permutations are bytes; composition is bytes.translate.

_PAD256 = bytes(range(256))
_BATCH = 512


def _inv_bytes(p: bytes) -> bytes:
    out = bytearray(len(p))
    for i, v in enumerate(p):
        out[v] = i
    return bytes(out)


def _scan_square(
    rows: Rows, pair_groups: Sequence[tuple[int, int, tuple[tuple[int, Probe], ...]]]
) -> list[tuple[Probe, int]]:
    """First failing a per probe on one square; probes grouped by (i, j)."""
    n = len(rows)
    mul = [bytes(r) for r in rows]
    cols = [bytes(c) for c in zip(*rows)]
    ldiv = [_inv_bytes(r) for r in mul]
    rdiv_cols = [_inv_bytes(c) for c in cols]
    rdiv = [bytes(r) for r in zip(*rdiv_cols)]
    pcols = [bytes(c) for c in zip(*ldiv)]
    fams = (frozenset(mul), frozenset(cols), frozenset(pcols))

    ident = _PAD256[:n]
    pad = _PAD256[n:]
    kills: list[tuple[Probe, int]] = []
    dead: set[Probe] = set()
    n_alive = sum(len(g[2]) for g in pair_groups)
    for a in range(n):
        t = (ident, mul[a], ldiv[a], cols[a], rdiv_cols[a], pcols[a], rdiv[a])
        full = [perm + pad for perm in t]
        for i, j, plist in pair_groups:
            comp = None
            for fam, probe in plist:
                if probe in dead:
                    continue
                if comp is None:
                    comp = t[j].translate(full[i])
                if comp not in fams[fam]:
                    kills.append((probe, a))
                    dead.add(probe)
                    n_alive -= 1
        if not n_alive:
            break
    return kills


def _group_probes(
    probes: Iterable[Probe],
) -> tuple[tuple[int, int, tuple[tuple[int, Probe], ...]], ...]:
    by_pair: dict[tuple[int, int], list[tuple[int, Probe]]] = {}
    for probe in sorted(set(probes)):
        i, j, fam = probe
        by_pair.setdefault((i, j), []).append((fam, probe))
    return tuple((i, j, tuple(v)) for (i, j), v in sorted(by_pair.items()))


def _scan_batch(
    batch: Sequence[tuple[int, int, Rows]], probes: tuple[Probe, ...]
) -> list[tuple[int, list[tuple[Probe, int]]]]:
    """Worker: kills per square of a batch.  Positions index into the batch."""
    groups = _group_probes(probes)
    return [
        (pos, _scan_square(rows, groups)) for pos, (_, _, rows) in enumerate(batch)
    ]


Kill = tuple[int, int, int, Rows]  # (order, stream index, a, rows)


def probe_scan(
    desc: CorpusDescriptor,
    probes: Iterable[Probe],
    jobs: int = 1,
    bound: int | None = None,
) -> dict[Probe, Kill | None]:
    """Minimal counterexample per probe over a corpus, or None.

    Deterministic for fixed inputs regardless of jobs: kills are reduced in
    (order, stream index, a) order, workers only partition the stream.
    """
    results: dict[Probe, Kill | None] = {p: None for p in probes}
    unsettled = set(results)
    if not unsettled:
        return results

    stream = iter_corpus_rows(desc, bound)

    def batches() -> Iterator[list[tuple[int, int, Rows]]]:
        while True:
            chunk = list(itertools.islice(stream, _BATCH))
            if not chunk:
                return
            yield chunk

    def apply(batch: Sequence[tuple[int, int, Rows]], scanned) -> None:
        for pos, kills in scanned:
            order, idx, rows = batch[pos]
            for probe, a in kills:
                if results.get(probe, False) is None:
                    results[probe] = (order, idx, a, rows)
                    unsettled.discard(probe)

    if jobs <= 1:
        for batch in batches():
            if not unsettled:
                break
            apply(batch, _scan_batch(batch, tuple(sorted(unsettled))))
        return results

    with ProcessPoolExecutor(max_workers=jobs) as pool:
        batch_iter = batches()
        while unsettled:
            wave = list(itertools.islice(batch_iter, jobs))
            if not wave:
                break
            snapshot = tuple(sorted(unsettled))
            futures = [pool.submit(_scan_batch, b, snapshot) for b in wave]
            for batch, fut in zip(wave, futures):
                apply(batch, fut.result())
    return results


# ---------------------------------------------------------------------------
# Certificates.


def _unit_equation_holds(
    table: Sequence[Sequence[int]], unit: UnitKind, u: int, x: int
) -> bool:
    if unit is UnitKind.LEFT:
        return table[u][x] == x
    if unit is UnitKind.RIGHT:
        return table[x][u] == x
    return table[x][x] == u


def build_certificate(rows: Rows, a: int, case: CaseId, conv: Convention) -> Certificate:
    """Refutation witnesses for every candidate, from the full derivative.

    Raises SurveyError if some candidate is actually a unit; that would mean
    the probe that selected (rows, a) was unsound.
    """
    q = from_table(rows)
    table = apply_derivative(q, a, case.spec, conv).mul_table
    n = len(rows)
    refutation = []
    for u in range(n):
        witness = next(
            (x for x in range(n) if not _unit_equation_holds(table, case.unit, u, x)),
            None,
        )
        if witness is None:
            raise SurveyError(
                f"probe unsound: candidate {u} is a {case.unit.token}-unit "
                f"for case {case.token} at a={a}"
            )
        refutation.append((u, witness))
    return Certificate(
        rows=tuple(tuple(r) for r in rows),
        a=a,
        case=case,
        convention=conv,
        refutation=tuple(refutation),
    )


def verify_certificate(cert: Certificate) -> bool:
    """True iff the certificate genuinely refutes unit existence.

    Structural defects (bad shapes, candidates not covering 0..n-1) raise
    MalformedCertificateError naming the first failing field; a certificate
    whose table is not Latin or whose witnesses do not all refute returns
    False.
    """
    rows = cert.rows
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise MalformedCertificateError("rows", "not square")
    if not 0 <= cert.a < n:
        raise MalformedCertificateError("a", f"{cert.a} out of range")
    if len(cert.refutation) != n:
        raise MalformedCertificateError("refutation", f"{len(cert.refutation)} entries for order {n}")
    if sorted(u for u, _ in cert.refutation) != list(range(n)):
        raise MalformedCertificateError("refutation", "candidates must cover 0..n-1")
    if any(not 0 <= x < n for _, x in cert.refutation):
        raise MalformedCertificateError("refutation", "witness out of range")
    try:
        q = from_table(rows)
    except QuasigroupError:
        return False
    table = apply_derivative(q, cert.a, cert.case.spec, cert.convention).mul_table
    return all(
        not _unit_equation_holds(table, cert.case.unit, u, x)
        for u, x in cert.refutation
    )


# ---------------------------------------------------------------------------
# Surveys.


def run_survey_multi(
    desc: CorpusDescriptor,
    conventions: Sequence[Convention],
    jobs: int = 1,
    bound: int | None = None,
) -> dict[Convention, SurveyResult]:
    """One corpus pass shared by several conventions."""
    cases = all_cases()
    probe_of = {
        conv: {case: case_probe(case, conv) for case in cases} for conv in conventions
    }
    probes = {p for m in probe_of.values() for p in m.values()}
    kills = probe_scan(desc, probes, jobs=jobs, bound=bound)
    out: dict[Convention, SurveyResult] = {}
    for conv in conventions:
        statuses: dict[CaseId, Certificate | NoCounterexample] = {}
        for case in cases:
            kill = kills[probe_of[conv][case]]
            if kill is None:
                statuses[case] = NoCounterexample(desc.order, desc.token)
            else:
                _, _, a, rows = kill
                statuses[case] = build_certificate(rows, a, case, conv)
        out[conv] = SurveyResult(conv, desc, statuses)
    return out


def run_survey(
    desc: CorpusDescriptor,
    conv: Convention = CONVENTION_A,
    jobs: int = 1,
    bound: int | None = None,
) -> SurveyResult:
    """Classify all 1944 cases over a corpus under one convention."""
    return run_survey_multi(desc, [conv], jobs=jobs, bound=bound)[conv]


def minimal_counterexample(
    case: CaseId,
    conv: Convention = CONVENTION_A,
    max_order: int = 5,
    jobs: int = 1,
    bound: int | None = None,
) -> Certificate | None:
    """First counterexample scanning orders 3..max_order exhaustively."""
    desc = CorpusDescriptor("exhaustive", max_order)
    probe = case_probe(case, conv)
    kill = probe_scan(desc, [probe], jobs=jobs, bound=bound)[probe]
    if kill is None:
        return None
    _, _, a, rows = kill
    return build_certificate(rows, a, case, conv)


# ---------------------------------------------------------------------------
# Sign tables and the diff.

PLUS, MINUS, UNKNOWN = "+", "-", "?"


@dataclass(frozen=True)
class SignTable:
    """A +/-/? sign for every (spec, unit) cell; 648 x 3 in canonical order."""

    signs: Mapping[CaseId, str]

    def sign(self, case: CaseId) -> str:
        return self.signs[case]

    def __len__(self) -> int:
        return len(self.signs)


def compute_table(survey: SurveyResult) -> SignTable:
    """Minus where a counterexample was found, plus otherwise.

    A plus is bounded evidence (no counterexample up to the corpus bound),
    not proof.
    """
    return SignTable(
        {
            case: (MINUS if isinstance(status, Certificate) else PLUS)
            for case, status in survey.statuses.items()
        }
    )


_paper_table_cache: SignTable | None = None


def embedded_paper_table() -> SignTable:
    """The reference classification table shipped with the package."""
    global _paper_table_cache
    if _paper_table_cache is None:
        from .reportio import parse_paper_table  # deferred to avoid a cycle

        text = (
            resources.files("qderiv").joinpath("data/paper_table.txt").read_text()
        )
        _paper_table_cache = parse_paper_table(text)
    return _paper_table_cache


AGREE, DISAGREE, PAPER_UNKNOWN = "agree", "disagree", "paper_unknown"


@dataclass(frozen=True)
class DiffCell:
    case: CaseId
    computed: str
    paper: str
    status: str
    certificate: Certificate | None


@dataclass(frozen=True)
class DiffReport:
    convention: Convention
    corpus: CorpusDescriptor
    cells: tuple[DiffCell, ...]
    convention_agreements: dict[str, tuple[int, int, int]] | None  # token -> (agree, disagree, unknown)

    def counts(self) -> tuple[int, int, int]:
        agree = sum(1 for c in self.cells if c.status == AGREE)
        disagree = sum(1 for c in self.cells if c.status == DISAGREE)
        unknown = sum(1 for c in self.cells if c.status == PAPER_UNKNOWN)
        return agree, disagree, unknown


def agreement_counts(computed: SignTable, paper: SignTable) -> tuple[int, int, int]:
    """(agree, disagree, paper-unknown) over all 1944 cells."""
    if len(computed) != len(paper):
        raise SurveyError(f"shape mismatch: {len(computed)} vs {len(paper)} cells")
    agree = disagree = unknown = 0
    for case, sign in computed.signs.items():
        p = paper.sign(case)
        if p == UNKNOWN:
            unknown += 1
        elif p == sign:
            agree += 1
        else:
            disagree += 1
    return agree, disagree, unknown


def diff_against_paper(
    survey: SurveyResult,
    paper: SignTable,
    convention_agreements: dict[str, tuple[int, int, int]] | None = None,
) -> DiffReport:
    """Per-cell agree/disagree/paper_unknown, with certificates as evidence.

    Disagreements are reported, never corrected: every disagree cell where
    the computed sign is minus carries its certificate.
    """
    computed = compute_table(survey)
    if len(computed) != len(paper):
        raise SurveyError(f"shape mismatch: {len(computed)} vs {len(paper)} cells")
    cells = []
    for case in all_cases():
        c, p = computed.sign(case), paper.sign(case)
        if p == UNKNOWN:
            status = PAPER_UNKNOWN
        elif p == c:
            status = AGREE
        else:
            status = DISAGREE
        cert = None
        if status == DISAGREE and c == MINUS:
            status_obj = survey.statuses[case]
            assert isinstance(status_obj, Certificate)
            cert = status_obj
        cells.append(DiffCell(case, c, p, status, cert))
    return DiffReport(survey.convention, survey.corpus, tuple(cells), convention_agreements)


def convention_agreement_table(
    desc: CorpusDescriptor,
    paper: SignTable,
    jobs: int = 1,
    bound: int | None = None,
) -> dict[str, tuple[int, int, int]]:
    """Agreement counts against the reference table for all eight conventions.

    No convention is singled out; the counts are evidence for the reader.
    """
    surveys = run_survey_multi(desc, list(all_conventions()), jobs=jobs, bound=bound)
    return {
        conv.token: agreement_counts(compute_table(result), paper)
        for conv, result in surveys.items()
    }
