"""Command-line driver: ``hodgemirror {closed,open,check} --spec job.toml``.

Exit codes: 0 success, 1 input error, 2 mathematical inconsistency.
"""

from __future__ import annotations

import argparse
import itertools
import json
import os
import random
import sys
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

try:
    import tomllib
except ImportError:  # Python < 3.11
    import tomli as tomllib

from . import hodge, linalg, quantum
from .closed import (closed_pipeline, flat_period_matrix, limiting_period_matrix,
                     monodromy_matrices)
from .extension import (InconsistentChargeError, abel_jacobi_limit, domain_wall,
                        extended_monodromy, infinitesimal_invariant, ogw_axioms_check,
                        ogw_table_from_ntilde, open_potential_q, real_quintic_tau, superpotential,
                        superpotential_decompose)
from .picard_fuchs import (PFOperator, apply_operator, frobenius_mum_basis,
                           hypergeometric_operator, solve_inhomogeneous)
from .series import FormalConstant, PuiseuxLogSeries

DEFAULT_ORDER = 12
ORDER_ENV = "HODGEMIRROR_ORDER"


class SpecError(Exception):
    """Malformed or invalid job file (exit code 1)."""


class MathInconsistency(Exception):
    """A mathematical consistency check failed (exit code 2)."""


# ---- spec parsing --------------------------------------------------------------------


def _rat(value, where: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise SpecError(f"{where}: expected an integer or a rational string like \"15/8\", "
                        f"got {value!r}")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise SpecError(f"{where}: cannot parse {value!r} as a rational ({exc})") from None


def _int(value, where: str) -> int:
    q = _rat(value, where)
    if q.denominator != 1:
        raise SpecError(f"{where}: expected an integer, got {q}")
    return int(q)


def _table(spec: Dict, key: str, where: str = "") -> Dict:
    val = spec.get(key)
    if not isinstance(val, dict):
        raise SpecError(f"{where}{key}: missing or not a table")
    return val


def load_spec(path: str) -> Dict:
    try:
        with open(path, "rb") as fh:
            return tomllib.load(fh)
    except FileNotFoundError:
        raise SpecError(f"{path}: file not found") from None
    except tomllib.TOMLDecodeError as exc:
        raise SpecError(f"{path}: {exc}") from None


def parse_operator(spec: Dict) -> PFOperator:
    op = _table(spec, "operator")
    try:
        if "theta_coeffs" in op:
            coeffs = op["theta_coeffs"]
            if not isinstance(coeffs, list) or len(coeffs) != 5:
                raise SpecError("operator.theta_coeffs: expected five polynomials p0..p4")
            polys = []
            for i, p in enumerate(coeffs):
                if not isinstance(p, list):
                    raise SpecError(f"operator.theta_coeffs[{i}]: expected a coefficient list")
                polys.append(tuple(_rat(c, f"operator.theta_coeffs[{i}]") for c in p))
            return PFOperator(tuple(polys))
        if "factors" in op:
            factors = op["factors"]
            if not isinstance(factors, list) or not all(isinstance(f, list) and len(f) == 2
                                                         for f in factors):
                raise SpecError("operator.factors: expected a list of [w, k] pairs")
            pairs = [(_int(w, "operator.factors"), _int(k, "operator.factors")) for w, k in factors]
            return hypergeometric_operator(pairs, _rat(op.get("scale", 1), "operator.scale"))
    except ValueError as exc:
        raise SpecError(f"operator: {exc}") from None
    raise SpecError("operator: need either 'factors' (with 'scale') or 'theta_coeffs'")


def parse_geometry(spec: Dict):
    geo = _table(spec, "geometry")
    for key in ("kappa", "a", "b"):
        if key not in geo:
            raise SpecError(f"geometry.{key}: missing")
    return tuple(_int(geo[k], f"geometry.{k}") for k in ("kappa", "a", "b"))


def resolve_order(cli_order: Optional[int], spec: Dict) -> int:
    if cli_order is not None:
        order = cli_order
    elif "order" in spec:
        order = _int(spec["order"], "order")
    elif os.environ.get(ORDER_ENV):
        try:
            order = int(os.environ[ORDER_ENV])
        except ValueError:
            raise SpecError(f"{ORDER_ENV}: expected an integer") from None
    else:
        order = DEFAULT_ORDER
    if order < 2:
        raise SpecError(f"order: must be at least 2, got {order}")
    return order


def _table_length(spec: Dict, available: int) -> int:
    out = spec.get("output", {})
    if not isinstance(out, dict):
        raise SpecError("output: not a table")
    if "table_length" not in out:
        return available
    n = _int(out["table_length"], "output.table_length")
    if n > available:
        raise SpecError(f"output.table_length: {n} entries requested but the truncation order "
                        f"only determines {available}; raise --order")
    return n


# ---- serialization ---------------------------------------------------------------------


def fr(x) -> str:
    return str(Fraction(x))


def formal(c: FormalConstant) -> Dict[str, str]:
    return {"rational": fr(c.rational), "zeta3": fr(c.zeta3), "zeta2": fr(c.zeta2)}


def series_json(s: PuiseuxLogSeries) -> Dict[str, Any]:
    return {
        "order": None if s.order is None else fr(s.order),
        "cover": s.cover,
        "terms": [[fr(e), j, fr(c)] for (e, j), c in s.items()],
    }


def coeff_list(s: PuiseuxLogSeries, count: int, start=0, step=1) -> Dict[str, Any]:
    """Coefficients of ``x**(start + i*step)``, ``i < count``, tagged with the truncation order."""
    return {
        "order": None if s.order is None else fr(s.order),
        "start": fr(start),
        "step": fr(step),
        "coefficients": [fr(c) for c in s.coefficients(count, start=start, step=step)],
    }


def matrix_json(m) -> List[List[str]]:
    return [[fr(x) for x in row] for row in m]


def _render_table(data: Any, prefix: str = "") -> List[str]:
    lines = []
    if isinstance(data, dict):
        if set(data) == {"order", "cover", "terms"}:
            body = " + ".join(f"{c}*x^({e})" + (f"*t^{j}" if j else "") for e, j, c in data["terms"])
            lines.append(f"{prefix}: {body or '0'}  [mod x^({data['order']})]")
            return lines
        if set(data) == {"order", "start", "step", "coefficients"}:
            lines.append(f"{prefix}: {', '.join(data['coefficients'])}  "
                         f"[x^({data['start']} + {data['step']}k), mod x^({data['order']})]")
            return lines
        if set(data) == {"rational", "zeta3", "zeta2"}:
            lines.append(f"{prefix}: {_formal_str(data)}")
            return lines
        for key in sorted(data):
            lines.extend(_render_table(data[key], f"{prefix}.{key}" if prefix else key))
        return lines
    if isinstance(data, list) and data and all(isinstance(r, dict) and not _is_formal(r)
                                               for r in data):
        for i, item in enumerate(data):
            lines.extend(_render_table(item, f"{prefix}[{i}]"))
        return lines
    if isinstance(data, list) and data and all(isinstance(r, list) for r in data):
        lines.append(f"{prefix}:")
        for row in data:
            lines.append("    " + "  ".join(_cell(x) for x in row))
        return lines
    if isinstance(data, list):
        lines.append(f"{prefix}: " + ", ".join(_cell(x) for x in data))
        return lines
    lines.append(f"{prefix}: {data}")
    return lines


def _is_formal(d) -> bool:
    return isinstance(d, dict) and set(d) == {"rational", "zeta3", "zeta2"}


def _formal_str(d) -> str:
    parts = []
    if d["rational"] != "0" or (d["zeta3"] == "0" and d["zeta2"] == "0"):
        parts.append(d["rational"])
    if d["zeta3"] != "0":
        parts.append(f"{d['zeta3']}*zeta3hat")
    if d["zeta2"] != "0":
        parts.append(f"{d['zeta2']}*zeta2hat")
    return " + ".join(parts)


def _cell(x) -> str:
    if isinstance(x, dict) and set(x) == {"rational", "zeta3", "zeta2"}:
        return _formal_str(x)
    return str(x)


def render(bundle: Dict, fmt: str) -> str:
    if fmt == "machine":
        return json.dumps(bundle, sort_keys=True, indent=2) + "\n"
    return "\n".join(_render_table(bundle)) + "\n"


# ---- commands ---------------------------------------------------------------------------


def run_closed(spec: Dict, order: int) -> Dict:
    op = parse_operator(spec)
    kappa, a, b = parse_geometry(spec)
    basis = frobenius_mum_basis(op, order)
    data = closed_pipeline(op, kappa, a, b, basis)
    if data.yukawa.coefficient(0) != kappa:
        raise MathInconsistency("Yukawa constant term differs from kappa")
    count = _table_length(spec, order)
    try:
        mono = monodromy_matrices(kappa, a)
        monodromy = {"M": matrix_json(mono.M), "N": matrix_json(mono.N)}
    except ValueError as exc:
        # kappa = 0: classical data only, no maximally unipotent monodromy
        monodromy = {"M": None, "N": None, "note": str(exc)}
    ncount = min(count, len(data.ntilde))
    return {
        "command": "closed",
        "order": order,
        "geometry": {"kappa": kappa, "a": a, "b": b},
        "mirror_map": {"z_of_q": coeff_list(data.mirror.z_of_q, count),
                       "t_of_z_holomorphic": coeff_list(data.mirror.t_of_z.log_part(0), count)},
        "yukawa": coeff_list(data.yukawa, count),
        "ntilde": [fr(x) for x in data.ntilde[:ncount]],
        "instanton_numbers": [fr(x) for x in data.instantons[:ncount]],
        "prepotential_quantum": series_json(data.prepotential_quantum),
        "monodromy": monodromy,
        "limiting_period_matrix": [[formal(x) for x in row]
                                   for row in limiting_period_matrix(kappa, a, b)],
        "gamma_class": [formal(x) for x in hodge.gamma_class(a, b)],
    }


def _parse_open(spec: Dict):
    o = _table(spec, "open")
    r = _int(o.get("r", 1), "open.r")
    if r < 1:
        raise SpecError("open.r: must be positive")
    branes = o.get("branes", [])
    if not isinstance(branes, list) or not branes:
        raise SpecError("open.branes: need at least one brane")
    parsed = []
    for i, br in enumerate(branes):
        where = f"open.branes[{i}]"
        if not isinstance(br, dict):
            raise SpecError(f"{where}: not a table")
        sign = _int(br.get("sign", 1), f"{where}.sign")
        if sign not in (1, -1):
            raise SpecError(f"{where}.sign: must be 1 or -1")
        parsed.append({
            "name": str(br.get("name", f"brane{i}")),
            "lambda": _rat(br.get("lambda", 0), f"{where}.lambda"),
            "s": _rat(br.get("s", 0), f"{where}.s"),
            "c": _rat(br.get("c", 0), f"{where}.c"),
            "sign": sign,
        })
    return o, r, parsed


def _tau(o: Dict, op: PFOperator, r: int, order: int) -> PuiseuxLogSeries:
    sel = o.get("tau", "inhomogeneous")
    if sel == "real_quintic":
        return real_quintic_tau(order)
    if sel == "inhomogeneous":
        terms = o.get("inhomogeneity")
        if not isinstance(terms, list) or not terms:
            raise SpecError("open.inhomogeneity: expected a list of [exponent, coefficient] pairs")
        rhs = {}
        for i, pair in enumerate(terms):
            if not isinstance(pair, list) or len(pair) != 2:
                raise SpecError(f"open.inhomogeneity[{i}]: expected [exponent, coefficient]")
            e = _rat(pair[0], f"open.inhomogeneity[{i}][0]")
            if (e * r).denominator != 1 or e <= 0:
                raise SpecError(f"open.inhomogeneity[{i}]: exponent {e} not in (1/{r}) Z>0")
            rhs[(e, 0)] = _rat(pair[1], f"open.inhomogeneity[{i}][1]")
        try:
            return solve_inhomogeneous(op, PuiseuxLogSeries(rhs, order, r))
        except ValueError as exc:
            raise SpecError(f"open.inhomogeneity: {exc}") from None
    raise SpecError(f"open.tau: unknown selector {sel!r} (use 'real_quintic' or 'inhomogeneous')")


def _lattice(s: PuiseuxLogSeries, r: int):
    """``(start, step)`` of the smallest progression carrying the positive exponents of ``s``."""
    residues = {e - (e.numerator // e.denominator) for e in s.exponents() if e > 0}
    if len(residues) == 1:
        base = residues.pop()
        return (base or Fraction(1)), Fraction(1)
    return Fraction(1, r), Fraction(1, r)


def _lattice_count(start: Fraction, step: Fraction, order) -> int:
    n = 0
    while start + n * step < order:
        n += 1
    return n


def run_open(spec: Dict, order: int) -> Dict:
    op = parse_operator(spec)
    kappa, a, b = parse_geometry(spec)
    o, r, branes = _parse_open(spec)
    basis = frobenius_mum_basis(op, order)
    data = closed_pipeline(op, kappa, a, b, basis)
    tau = _tau(o, op, r, order)
    psi = open_potential_q(tau, basis[0], data.mirror)
    count = _table_length(spec, order)
    start, step = _lattice(tau, r)
    nterms = _lattice_count(start, step, order)
    if count < order:
        nterms = min(nterms, count)

    out: Dict[str, Any] = {"command": "open", "order": order, "r": r}
    out["tau"] = coeff_list(tau, nterms, start, step)
    out["open_potential"] = coeff_list(psi, nterms, start, step)
    inconsistent = []

    Ws, decs = [], {}
    for br in branes:
        W = superpotential(br["lambda"], br["s"], br["c"], r, psi, br["sign"])
        try:
            dec = superpotential_decompose(W, r, psi)
        except InconsistentChargeError as exc:
            raise MathInconsistency(f"brane {br['name']}: {exc}") from None
        Ws.append(W)
        decs[br["name"]] = {"lambda": dec.lam, "s": dec.s, "s_mod_r": dec.s_mod_r,
                            "c": formal(dec.c), "xi": dec.xi,
                            "infinitesimal_invariant": coeff_list(infinitesimal_invariant(W),
                                                                  nterms, start, step)}
    out["branes"] = decs

    mono = monodromy_matrices(kappa, a)
    ext = extended_monodromy(mono.N, r, [(int(br["lambda"]), int(br["s"])) for br in branes])
    out["extended_monodromy"] = matrix_json(ext.matrix)
    rep = hodge.extended_filtration_check(ext, hodge.extended_candidate_filtration(ext))
    out["extended_filtration_check"] = {"ok": rep.ok, "torsion_index": rep.info["torsion_index"],
                                        "failures": [list(map(str, f)) for f in rep.failures]}
    if not rep.ok:
        inconsistent.append("extended filtration check failed")

    if len(Ws) >= 2:
        TA = domain_wall(Ws[0], Ws[1])
        dec = superpotential_decompose(TA, r)
        sr, c = abel_jacobi_limit(dec)
        out["domain_wall"] = {
            "series": series_json(TA),
            "lambda": dec.lam, "s": dec.s, "c": formal(dec.c),
            "infinitesimal_invariant": coeff_list(infinitesimal_invariant(TA), nterms, start, step),
            "abel_jacobi_limit": [fr(sr), formal(c)],
            "abel_jacobi_constant_as_zeta2": formal(FormalConstant.zeta2_multiple_of(c.rational)),
        }
        # B-model side: T_A w0 = s/r w1 + c w0 + k tau when the tail is k Psi_h
        lead = psi.coefficient(start)
        k = dec.w_series.coefficient(start) / lead if lead else Fraction(0)
        if dec.lam == 0 and lead and dec.w_series.equals_to_order(psi.scale(k)):
            TB = (basis[1].scale(Fraction(dec.s, r)) + basis[0].scale(dec.c.rational)
                  + tau.scale(k))
            out["domain_wall"]["b_model_residue"] = series_json(apply_operator(op, TB))
    nt = [psi.coefficient(Fraction(d, r)) for d in range(1, order * r)]
    table = ogw_table_from_ntilde(nt, r)
    violations = ogw_axioms_check(table)
    out["ogw_axiom_violations"] = [[fr(kk[0]), list(kk[1]), ax] for kk, ax in violations]
    if violations:
        inconsistent.append("open Gromov-Witten table violates an axiom")
    if inconsistent:
        out["inconsistencies"] = inconsistent
        raise MathInconsistency(out)
    return out


def _random_potential(rng: random.Random, n: int, deg: int):
    kappa = [[[0] * n for _ in range(n)] for _ in range(n)]
    for c in itertools.combinations_with_replacement(range(n), 3):
        v = rng.randint(-2, 2)
        for p in itertools.permutations(c):
            kappa[p[0]][p[1]][p[2]] = v
    terms = {}
    for _ in range(4):
        e = tuple(rng.randint(0, 2) for _ in range(n))
        if 0 < sum(e) < deg:
            terms[e] = rng.randint(-3, 3)
    return quantum.Potential(n, kappa, quantum.QSeries(n, terms, deg))


def _random_open(rng: random.Random, n: int, deg: int):
    lam = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            lam[i][j] = lam[j][i] = rng.randint(-2, 2)
    terms = {}
    for _ in range(3):
        e = tuple(Fraction(rng.randint(0, 3), 2) for _ in range(n))
        if 0 < sum(e) < deg:
            terms[e] = rng.randint(-3, 3)
    return quantum.OpenPotential(n, lam, quantum.QSeries(n, terms, deg))


def _parse_qseries(n: int, entries, order, where: str) -> quantum.QSeries:
    if not isinstance(entries, list):
        raise SpecError(f"{where}: expected a list of [[exponents], coefficient] pairs")
    terms = {}
    for i, item in enumerate(entries):
        if not isinstance(item, list) or len(item) != 2 or not isinstance(item[0], list):
            raise SpecError(f"{where}[{i}]: expected [[exponents], coefficient]")
        if len(item[0]) != n:
            raise SpecError(f"{where}[{i}]: exponent has {len(item[0])} entries, expected {n}")
        e = tuple(_rat(x, f"{where}[{i}]") for x in item[0])
        terms[e] = terms.get(e, Fraction(0)) + _rat(item[1], f"{where}[{i}]")
    try:
        return quantum.QSeries(n, terms, order)
    except ValueError as exc:
        raise SpecError(f"{where}: {exc}") from None


def _parse_check_case(case: Dict, idx: int):
    where = f"check.potentials[{idx}]"
    if not isinstance(case, dict):
        raise SpecError(f"{where}: not a table")
    n = _int(case.get("n", 0), f"{where}.n")
    if n < 1:
        raise SpecError(f"{where}.n: must be positive")
    pairing = case.get("pairing")
    if not isinstance(pairing, list) or len(pairing) != n or any(
            not isinstance(r, list) or len(r) != n for r in pairing):
        raise SpecError(f"{where}.pairing: expected an {n}x{n} matrix")
    try:
        Q = quantum.PairingMatrix([[_rat(x, f"{where}.pairing") for x in r] for r in pairing])
    except ValueError as exc:
        raise SpecError(f"{where}.pairing: {exc}") from None
    order = case.get("order")
    order = None if order is None else _rat(order, f"{where}.order")
    kappa = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for j, item in enumerate(case.get("cubic", [])):
        if not isinstance(item, list) or len(item) != 4:
            raise SpecError(f"{where}.cubic[{j}]: expected [i, j, k, value]")
        ijk = [_int(x, f"{where}.cubic[{j}]") for x in item[:3]]
        if any(not 0 <= x < n for x in ijk):
            raise SpecError(f"{where}.cubic[{j}]: index out of range")
        for p in itertools.permutations(ijk):
            kappa[p[0]][p[1]][p[2]] = _rat(item[3], f"{where}.cubic[{j}]")
    phi = quantum.Potential(n, kappa, _parse_qseries(n, case.get("quantum", []), order,
                                                      f"{where}.quantum"))
    psis = []
    for j, op_ in enumerate(case.get("open", [])):
        w2 = f"{where}.open[{j}]"
        lam = [[Fraction(0)] * n for _ in range(n)]
        for item in op_.get("quadratic", []):
            if not isinstance(item, list) or len(item) != 3:
                raise SpecError(f"{w2}.quadratic: expected [i, j, value] entries")
            i1, i2 = _int(item[0], w2), _int(item[1], w2)
            if not (0 <= i1 < n and 0 <= i2 < n):
                raise SpecError(f"{w2}.quadratic: index out of range")
            lam[i1][i2] = lam[i2][i1] = _rat(item[2], w2)
        psis.append(quantum.OpenPotential(n, lam, _parse_qseries(n, op_.get("quantum", []), order,
                                                                 f"{w2}.quantum")))
    return phi, psis, Q


def check_case(phi, psis, Q) -> Dict[str, Any]:
    """Compare curvature with the residual tensors along independent paths."""
    n = phi.n
    conn = quantum.dubrovin_connection(phi, psis, Q)
    R = quantum.curvature(conn)
    W = quantum.wdvv_residual(phi, Q)
    O = quantum.open_wdvv_residual(phi, psis, Q)
    symmetric = all(Q.Q[i][j] == Q.Q[j][i] for i in range(n) for j in range(n))
    closed_agree = True
    open_agree = True
    for (i, j), Rm in R.items():
        for k in range(n):
            for l in range(n):
                acc = quantum.QSeries(n)
                for m in range(n):
                    if Q.Q[m][l]:
                        acc = acc + Rm[m][k].scale(Q.Q[m][l])
                if not (acc - W[(k, j, i, l)]).is_zero():
                    closed_agree = False
        if symmetric:
            for kk in range(len(psis)):
                for l in range(n):
                    acc = quantum.QSeries(n)
                    for b in range(n):
                        if Q.Q[b][l]:
                            acc = acc + Rm[b][n + kk].scale(Q.Q[b][l])
                    if not (acc - O[(i, l, j, kk)]).is_zero():
                        open_agree = False
    flat = all(x.is_zero() for Rm in R.values() for row in Rm for x in row)
    wdvv = all(x.is_zero() for x in W.values())
    owdvv = all(x.is_zero() for x in O.values())
    return {
        "n": n,
        "flat": flat,
        "wdvv_holds": wdvv,
        "open_wdvv_holds": owdvv,
        "curvature_equals_wdvv_residual": closed_agree,
        "curvature_equals_open_wdvv_residual": open_agree if symmetric else None,
        "flat_iff_residuals_vanish": flat == (wdvv and owdvv),
    }


def run_check(spec: Dict, order: int) -> Dict:
    out: Dict[str, Any] = {"command": "check", "order": order}
    inconsistent = []
    chk = spec.get("check", {})
    if not isinstance(chk, dict):
        raise SpecError("check: not a table")
    cases = []
    for idx, case in enumerate(chk.get("potentials", [])):
        cases.append(_parse_check_case(case, idx))
    rnd = chk.get("random")
    if rnd is not None:
        if not isinstance(rnd, dict):
            raise SpecError("check.random: not a table")
        rng = random.Random(_int(rnd.get("seed", 0), "check.random.seed"))
        n = _int(rnd.get("n", 2), "check.random.n")
        deg = _int(rnd.get("degree", 4), "check.random.degree")
        for _ in range(_int(rnd.get("count", 1), "check.random.count")):
            Q = None
            while Q is None:
                m = [[0] * n for _ in range(n)]
                for i in range(n):
                    for j in range(i, n):
                        m[i][j] = m[j][i] = rng.randint(-2, 2)
                try:
                    Q = quantum.PairingMatrix(m)
                except ValueError:
                    Q = None
            cases.append((_random_potential(rng, n, deg), [_random_open(rng, n, deg)], Q))
    results = []
    for phi, psis, Q in cases:
        res = check_case(phi, psis, Q)
        results.append(res)
        if not (res["curvature_equals_wdvv_residual"] and res["curvature_equals_open_wdvv_residual"]
                is not False and res["flat_iff_residuals_vanish"]):
            inconsistent.append("curvature and residuals disagree")
    out["potentials"] = results

    if "operator" in spec and "geometry" in spec:
        op = parse_operator(spec)
        kappa, a, b = parse_geometry(spec)
        basis = frobenius_mum_basis(op, order)
        data = closed_pipeline(op, kappa, a, b, basis)
        open_data = []
        if "open" in spec:
            o, r, branes = _parse_open(spec)
            tau = _tau(o, op, r, order)
            psi = open_potential_q(tau, basis[0], data.mirror)
            open_data = [(br["lambda"] / r ** 2 * 2, psi.scale(br["sign"])) for br in branes]
        phi_h = data.prepotential_quantum
        A = quantum.rank1_connection(kappa, phi_h, open_data)
        secs = quantum.flat_sections(kappa, phi_h, open_data)
        flat = all(x.is_zero() for s in secs for x in quantum.apply_connection(A, s))
        out["rank1_flat_sections"] = flat
        if not flat:
            inconsistent.append("rank-one flat sections are not annihilated")
        mono = monodromy_matrices(kappa, a)
        G = flat_period_matrix(kappa, a, phi_h)
        shifted = [[x.shift_log(1) for x in row] for row in G]
        mt = linalg.transpose(mono.M)
        integral = all((sum((G[k][j].scale(mt[i][k]) for k in range(4)), PuiseuxLogSeries.zero())
                        - shifted[i][j]).is_zero() for i in range(4) for j in range(4))
        out["monodromy_integral_structure"] = integral
        if not integral:
            inconsistent.append("flat period matrix does not transform by M")
        N = hodge.NilpotentOperator(mono.N, 3)
        W = hodge.weight_filtration(N)
        rep = hodge.check_filtration_properties(N, W)
        out["weight_filtration"] = {"ok": rep.ok, "graded_dims": W.graded_dims(0, 6)}
        if not rep.ok:
            inconsistent.append("weight filtration check failed")
        if "open" in spec:
            ext = extended_monodromy(mono.N, r, [(int(br["lambda"]), int(br["s"])) for br in branes])
            erep = hodge.extended_filtration_check(ext, hodge.extended_candidate_filtration(ext))
            out["extended_filtration"] = {"ok": erep.ok,
                                          "torsion_index": erep.info["torsion_index"]}
            if not erep.ok:
                inconsistent.append("extended filtration check failed")
    if inconsistent:
        out["inconsistencies"] = sorted(set(inconsistent))
        raise MathInconsistency(out)
    return out


COMMANDS = {"closed": run_closed, "open": run_open, "check": run_check}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hodgemirror",
                                     description="Exact closed and open mirror symmetry computations")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_ in (("closed", "mirror map, Yukawa coupling, invariants, limits"),
                        ("open", "open potential, superpotentials, extended monodromy"),
                        ("check", "WDVV / Open WDVV, flatness and filtration checks")):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--spec", required=True, help="TOML job file")
        p.add_argument("--order", type=int, default=None,
                       help=f"truncation order in z (default: spec, ${ORDER_ENV}, or {DEFAULT_ORDER})")
        p.add_argument("--format", choices=("table", "machine"), default="table")
        p.add_argument("--out", default=None, help="write output here instead of stdout")
    return parser


def _emit(text: str, out: Optional[str]):
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        spec = load_spec(args.spec)
        order = resolve_order(args.order, spec)
        bundle = COMMANDS[args.command](spec, order)
    except SpecError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except MathInconsistency as exc:
        payload = exc.args[0]
        if isinstance(payload, dict):
            _emit(render(payload, args.format), args.out)
            sys.stderr.write("inconsistent: " + "; ".join(payload.get("inconsistencies", [])) + "\n")
        else:
            sys.stderr.write(f"inconsistent: {payload}\n")
        return 2
    _emit(render(bundle, args.format), args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
