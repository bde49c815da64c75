"""Command-line surface: ingestion, verification, invariants, random sweeps.

Commands: check, matrix, det, rhs, invariants, random.  Reports are JSON
documents with canonical key order; identical input and seed produce
byte-identical output (timings are only included on request).

Exit codes: 0 all identities matched, 2 q-identity mismatch (a finding,
reported with a full witness), 1 validation or internal error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import random
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional

from . import __version__
from .arrangement import Arrangement, Hyperplane
from .flagspace import (build_y_matrix, check_basis_of_kernel,
                        expansion_matches_y, pairing, phi)
from .forms import (IntersectionForm, TheoremViolation, build_S, build_Sq,
                    h_poly, rhs_classical, rhs_q, verify)
from .oriented_matroid import AffineOrientedMatroid, SignVector, conforms, separation
from .polyring import IntPoly, poly_eval

MATRIX_REPORT_LIMIT = 40


@dataclass
class RunConfig:
    command: str
    input: Optional[str] = None
    out: Optional[str] = None
    seed: int = 0
    dim: Optional[int] = None
    n: Optional[int] = None
    count: int = 10
    jobs: int = 1
    include_matrices: bool = False
    nudge: Optional[int] = None
    timings: bool = False


@dataclass
class Instance:
    kind: str
    om: AffineOrientedMatroid
    arrangement: Optional[Arrangement]
    digest: str


def _digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def load_instance(path: str, nudge: Optional[int] = None) -> Instance:
    raw = Path(path).read_bytes()
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: not valid JSON (line {exc.lineno}: {exc.msg})")
    if not isinstance(doc, dict):
        raise ValueError(f"{path}: top-level JSON must be an object")
    if "hyperplanes" in doc:
        arr = Arrangement.from_json(doc)
        violation = arr.validate_generic()
        if violation is not None and nudge is not None:
            arr = _nudge_offsets(arr, nudge)
            violation = arr.validate_generic()
        if violation is not None:
            raise ValueError(f"{path}: {violation.describe()}")
        return Instance("arrangement", arr.compile(), arr, _digest(raw))
    if "chirotope" in doc:
        return Instance("oriented_matroid", AffineOrientedMatroid.from_json(doc),
                        None, _digest(raw))
    raise ValueError(f"{path}: expected an arrangement ('hyperplanes') or an "
                     f"oriented matroid ('chirotope') document")


def _nudge_offsets(arr: Arrangement, seed: int, attempts: int = 64) -> Arrangement:
    rng = random.Random(seed)
    for _ in range(attempts):
        offsets = [h.offset + Fraction(rng.randint(-9, 9), rng.randint(101, 499))
                   for h in arr.hyperplanes]
        cand = arr.with_offsets(offsets)
        if cand.validate_generic() is None:
            return cand
    raise ValueError(f"nudging offsets failed after {attempts} attempts; "
                     f"try a different --nudge seed")


# -- report assembly ----------------------------------------------------------

def _poly_json(p: IntPoly) -> list[str]:
    return p.coeff_strings()


def _factors_json(factors) -> list[dict]:
    return [{"flat": list(f.flat), "base": f.base, "exponent": f.exponent}
            for f in factors]


def _verdict_json(s_form, vs, vq) -> dict:
    return {
        "n_topes": s_form.n,
        "det_S": str(poly_eval(vs.lhs, 1)),
        "rhs_S": str(poly_eval(vs.rhs, 1)),
        "det_Sq": _poly_json(vq.lhs),
        "rhs_Sq": _poly_json(vq.rhs),
        "factors": _factors_json(vq.factors),
        "theorem_match": vs.match,
        "conjecture_match": vq.match,
    }


def _matrices_json(s: IntersectionForm, sq: IntersectionForm) -> dict:
    return {
        "topes": [t.text() for t in s.topes],
        "S": [[str(poly_eval(e, 1)) for e in row] for row in s.matrix.entries],
        "S_q": [[_poly_json(e) for e in row] for row in sq.matrix.entries],
    }


def _instance_json(inst: Instance) -> dict:
    om = inst.om
    return {
        "type": inst.kind,
        "n": len(om.ground),
        "r": om.central.rank,
        "elements": list(om.ground),
        "n_bounded_topes": len(om.bounded_topes()),
    }


def _emit(report: dict, out: Optional[str]) -> None:
    text = json.dumps(report, indent=2) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def run_check(inst: Instance, cfg: RunConfig, matrices: str = "auto",
              ) -> tuple[dict, int]:
    """matrices: 'auto' (size-gated), 'omit', or 'on-mismatch' (witness)."""
    t0 = time.perf_counter()
    om = inst.om
    s = build_S(om, cfg.jobs)
    sq = build_Sq(om, cfg.jobs)
    t_forms = time.perf_counter()
    vs, vq = verify(om, forms=(s, sq))
    t_verify = time.perf_counter()
    if cfg.include_matrices:
        include = True
    elif matrices == "auto":
        include = s.n <= MATRIX_REPORT_LIMIT
    elif matrices == "on-mismatch":
        include = not vq.match
    else:
        include = False
    report = {
        "instance": _instance_json(inst),
        "verdict": _verdict_json(s, vs, vq),
        "matrices": _matrices_json(s, sq) if include else None,
        "timings": {"forms_s": round(t_forms - t0, 6),
                    "verify_s": round(t_verify - t_forms, 6)} if cfg.timings else None,
        "version": __version__,
        "input_digest": inst.digest,
    }
    return report, 0 if vq.match else 2


def cmd_check(cfg: RunConfig) -> int:
    inst = load_instance(cfg.input, cfg.nudge)
    report, code = run_check(inst, cfg)
    _emit(report, cfg.out)
    return code


def cmd_matrix(cfg: RunConfig) -> int:
    inst = load_instance(cfg.input, cfg.nudge)
    s = build_S(inst.om, cfg.jobs)
    sq = build_Sq(inst.om, cfg.jobs)
    report = {
        "instance": _instance_json(inst),
        "matrices": _matrices_json(s, sq),
        "version": __version__,
        "input_digest": inst.digest,
    }
    _emit(report, cfg.out)
    return 0


def cmd_det(cfg: RunConfig) -> int:
    from .polyring import poly_det
    inst = load_instance(cfg.input, cfg.nudge)
    s = build_S(inst.om, cfg.jobs)
    sq = build_Sq(inst.om, cfg.jobs)
    det_s = poly_det(s.matrix)
    det_sq = poly_det(sq.matrix)
    report = {
        "instance": _instance_json(inst),
        "det_S": str(poly_eval(det_s, 1)),
        "det_Sq": _poly_json(det_sq),
        "version": __version__,
        "input_digest": inst.digest,
    }
    _emit(report, cfg.out)
    return 0


def cmd_rhs(cfg: RunConfig) -> int:
    inst = load_instance(cfg.input, cfg.nudge)
    m = inst.om.matroid()
    value, factors = rhs_classical(m)
    value_q, _ = rhs_q(m)
    report = {
        "instance": _instance_json(inst),
        "rhs_S": str(value),
        "rhs_Sq": _poly_json(value_q),
        "factors": _factors_json(factors),
        "version": __version__,
        "input_digest": inst.digest,
    }
    _emit(report, cfg.out)
    return 0


# -- invariants ------------------------------------------------------------------

def structural_invariants(inst: Instance, jobs: int = 1) -> list[dict]:
    """Symmetry, q=1 specialization, Euler/palindromicity, flagspace suite."""
    om = inst.om
    results = []

    def add(name, ok, witness=None):
        entry = {"name": name, "pass": bool(ok)}
        if witness and not ok:
            entry["witness"] = witness
        results.append(entry)

    s = build_S(om, jobs)
    sq = build_Sq(om, jobs)
    n = s.n
    ent_s, ent_q = s.matrix.entries, sq.matrix.entries

    add("symmetry_S", all(ent_s[i][j] == ent_s[j][i]
                          for i in range(n) for j in range(n)))
    add("symmetry_Sq", all(ent_q[i][j] == ent_q[j][i]
                           for i in range(n) for j in range(n)))
    add("q1_specialization", all(
        poly_eval(ent_q[i][j], 1) == poly_eval(ent_s[i][j], 1)
        for i in range(n) for j in range(n)))
    r = om.central.rank
    add("diagonal_degree_2r", all(ent_q[i][i].degree == 2 * r for i in range(n)))

    euler_ok = True
    palin_ok = True
    lowterm_ok = True
    witness = None
    for i in range(n):
        for j in range(i, n):
            fv = om.meet_faces(s.topes[i], s.topes[j])
            if fv is None:
                continue
            if not fv.euler_ok():
                euler_ok = False
                witness = f"pair ({i},{j}) f={fv.f}"
            h = h_poly(fv)
            hq2 = h.coeffs[::2]
            if list(hq2) != list(reversed(hq2)):
                palin_ok = False
                witness = f"pair ({i},{j}) h={h}"
            d = separation(s.topes[i], s.topes[j])
            e = ent_q[i][j]
            low = next(k for k, c in enumerate(e.coeffs) if c)
            if low != d or e.coeffs[d] != (-1) ** d:
                lowterm_ok = False
                witness = f"pair ({i},{j}) entry {e}"
    add("euler_relation", euler_ok, witness)
    add("h_palindromicity", palin_ok, witness)
    add("lowest_degree_term", lowterm_ok, witness)

    vecs = [phi(om, t) for t in s.topes]
    gram_ok = all(pairing(vecs[i], vecs[j]) == poly_eval(ent_s[i][j], 1)
                  for i in range(n) for j in range(n))
    add("gram_identity", gram_ok)

    rep = check_basis_of_kernel(om)
    add("kernel_membership", all(rep.kernel_flags), "; ".join(rep.failures))
    add("tope_count_equals_mu_plus_dual", rep.mu_plus_dual == rep.n_topes,
        f"mu+={rep.mu_plus_dual} topes={rep.n_topes}")
    add("smith_divisors_all_one",
        rep.phi_rank == rep.n_topes and all(d == 1 for d in rep.phi_divisors),
        f"divisors={rep.phi_divisors}")
    add("boundary_kernel_dimension", rep.boundary_kernel_dim == rep.n_topes,
        f"dim={rep.boundary_kernel_dim}")

    if inst.kind == "arrangement":
        recompiled = Arrangement.from_json(inst.arrangement.to_json()).compile()
        add("canonical_order_stable",
            [t.key() for t in recompiled.bounded_topes()] ==
            [t.key() for t in om.bounded_topes()])
    return results


def cmd_invariants(cfg: RunConfig) -> int:
    inst = load_instance(cfg.input, cfg.nudge)
    results = structural_invariants(inst, cfg.jobs)
    if inst.kind == "arrangement":
        try:
            yrep = build_y_matrix(inst.arrangement, cfg.seed)
            results.append({"name": "det_y_unimodular", "pass": True,
                            "det_y": yrep.det_y, "xi": list(yrep.xi)})
            failures = expansion_matches_y(inst.om, yrep)
            entry = {"name": "phi_expansion_matches_y", "pass": not failures}
            if failures:
                entry["witness"] = failures[0]
            results.append(entry)
        except ValueError as exc:
            results.append({"name": "det_y_unimodular", "pass": False,
                            "witness": str(exc)})
    ok = all(r["pass"] for r in results)
    report = {
        "instance": _instance_json(inst),
        "invariants": results,
        "all_pass": ok,
        "version": __version__,
        "input_digest": inst.digest,
    }
    _emit(report, cfg.out)
    return 0 if ok else 1


# -- random sweeps ------------------------------------------------------------------

def generate_random_arrangement(rng: random.Random, dim: int, n: int,
                                attempts: int = 400) -> Optional[Arrangement]:
    """Random integer normals and rational offsets, retried until generic."""
    for _ in range(attempts):
        hyps = []
        for i in range(1, n + 1):
            while True:
                normal = tuple(rng.randint(-4, 4) for _ in range(dim))
                if any(normal):
                    break
            offset = Fraction(rng.randint(-24, 24), rng.randint(1, 6))
            hyps.append(Hyperplane.make(f"H{i}", [str(x) for x in normal],
                                        str(offset)))
        arr = Arrangement(dim, hyps)
        try:
            arr.central_chirotope()
        except ValueError:
            continue  # inessential draw
        if arr.validate_generic() is None:
            return arr
    return None


def cmd_random(cfg: RunConfig) -> int:
    if not (1 <= cfg.dim <= 4):
        raise ValueError("random sweeps support --dim between 1 and 4")
    if not (cfg.dim <= cfg.n <= 10):
        raise ValueError("random sweeps support --n between dim and 10")
    lines = []
    matches = 0
    mismatches = 0
    skipped = 0
    for i in range(cfg.count):
        rng = random.Random(f"{cfg.seed}:{i}")
        arr = generate_random_arrangement(rng, cfg.dim, cfg.n)
        if arr is None:
            skipped += 1
            print(f"instance {i}: no generic arrangement found, skipped",
                  file=sys.stderr)
            continue
        doc = json.dumps(arr.to_json(), sort_keys=True).encode()
        inst = Instance("arrangement", arr.compile(), arr, _digest(doc))
        report, code = run_check(inst, cfg, matrices="on-mismatch")
        report["instance_index"] = i
        if code == 0:
            matches += 1
        else:
            mismatches += 1
        lines.append(json.dumps(report, separators=(",", ":")))
    text = "\n".join(lines) + ("\n" if lines else "")
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)
    print(f"instances: {cfg.count - skipped}  matches: {matches}  "
          f"mismatches: {mismatches}  skipped: {skipped}", file=sys.stderr)
    return 2 if mismatches else 0


# -- entry point -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chamberforms",
        description="Intersection matrices of bounded chambers and their "
                    "determinant identities, in exact arithmetic.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_input):
        if needs_input:
            p.add_argument("--input", required=True,
                           help="arrangement or oriented-matroid JSON file")
            p.add_argument("--nudge", type=int, default=None, metavar="SEED",
                           help="re-randomize non-generic offsets from this seed")
        p.add_argument("--out", default=None, help="write the report here")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--include-matrices", action="store_true")
        p.add_argument("--timings", action="store_true",
                       help="include wall-clock timings (breaks byte-stability)")

    for name, help_text in [
            ("check", "verify both determinant identities end to end"),
            ("matrix", "emit the S and S_q matrices"),
            ("det", "emit the two determinants"),
            ("rhs", "emit the product-formula factorization"),
            ("invariants", "run the structural and proof-machinery checks")]:
        p = sub.add_parser(name, help=help_text)
        common(p, needs_input=True)

    p = sub.add_parser("random", help="sweep random generic arrangements")
    common(p, needs_input=False)
    p.add_argument("--dim", type=int, required=True, help="ambient dimension r")
    p.add_argument("--n", type=int, required=True, help="number of hyperplanes")
    p.add_argument("--count", type=int, default=10)
    return parser


COMMANDS = {
    "check": cmd_check,
    "matrix": cmd_matrix,
    "det": cmd_det,
    "rhs": cmd_rhs,
    "invariants": cmd_invariants,
    "random": cmd_random,
}


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    cfg = RunConfig(command=ns.command,
                    input=getattr(ns, "input", None),
                    out=ns.out,
                    seed=ns.seed,
                    dim=getattr(ns, "dim", None),
                    n=getattr(ns, "n", None),
                    count=getattr(ns, "count", 10),
                    jobs=ns.jobs,
                    include_matrices=ns.include_matrices,
                    nudge=getattr(ns, "nudge", None),
                    timings=ns.timings)
    try:
        return COMMANDS[cfg.command](cfg)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except TheoremViolation as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
