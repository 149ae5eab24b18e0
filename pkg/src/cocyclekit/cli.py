"""Command-line front end.  Every command prints a deterministic JSON report.

Exit codes: 0 success, 1 validation or parse error, 2 internal inconsistency
(a claimed identity failed, which would indicate a bug).
"""
from __future__ import annotations

import argparse
import hashlib
import json
import random
import sys
from fractions import Fraction
from itertools import combinations

from . import CONVENTIONS, __version__
from .errors import CocycleKitError, InconsistencyError, ValidationError
from .exactalg import Field, FieldSpec, Vec, scalar_to_json
from .exactalg.field import Cyclo
from .liealg import (
    LieAlgebra,
    ModuleAction,
    SemidirectData,
    adjoint_module,
    coadjoint_module,
    lie_from_structure,
    semidirect_sum,
    standard_algebra,
    trivial_module,
)


# ---------------------------------------------------------------- serialization

def scalar_json(x):
    return scalar_to_json(x)


def vec_json(v) -> list:
    return [scalar_json(a) for a in v]


def matrix_json(M) -> list:
    return [[scalar_json(a) for a in row] for row in M]


def field_json(field: Field) -> dict:
    spec = field.spec
    return {"kind": spec.kind, "order": spec.order}


def value_json(v):
    """Vec, TorusForm, ReducedOneForm or LaurentPoly to a JSON-friendly structure."""
    from .exactalg import LaurentPoly
    from .torusforms import ReducedOneForm, TorusForm

    if isinstance(v, ReducedOneForm):
        return {"reduced_oneform": value_json(v.rep)}
    if isinstance(v, TorusForm):
        return {"form_degree": v.p, "terms": [{"axes": list(I), "exp": list(a), "value": vec_json(val)}
                                              for (I, a), val in v.items()]}
    if isinstance(v, LaurentPoly):
        return {"laurent": [{"exp": list(a), "coeff": scalar_json(c)} for a, c in sorted(v.terms.items())]}
    if isinstance(v, Vec):
        return vec_json(v)
    if isinstance(v, (Fraction, int, Cyclo)):
        return scalar_json(v)
    raise InconsistencyError(f"cannot serialize value of type {type(v).__name__}")


def cochain_json(c) -> dict:
    names = c.algebra.names
    return {"degree": c.p, "values": [{"args": [names[k] for k in t], "value": vec_json(v)}
                                      for t, v in sorted(c.values.items())]}


def algebra_to_doc(g: LieAlgebra) -> dict:
    """Canonical AlgebraDoc: field, basis names and nonzero brackets [x, y] with x before y."""
    brackets = []
    for (i, j), v in sorted(g.brackets.items()):
        out = [[g.names[k], scalar_json(a)] for k, a in enumerate(v) if a]
        if out:
            brackets.append({"x": g.names[i], "y": g.names[j], "out": out})
    return {"field": field_json(g.field), "basis": list(g.names), "brackets": brackets,
            "name": g.label or ""}


def canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def digest(obj) -> str:
    return hashlib.sha256(canonical(obj).encode("ascii")).hexdigest()


def algebra_digest(g: LieAlgebra) -> str:
    return digest(algebra_to_doc(g))


class DocError(ValidationError):
    """Parse error with a location path such as brackets[2].out[0]."""

    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}", witness=where)


def _need(doc, key, where):
    if not isinstance(doc, dict) or key not in doc:
        raise DocError(where, f"missing key {key!r}")
    return doc[key]


def parse_field(doc, where="field") -> Field:
    if doc is None:
        return Field()
    if not isinstance(doc, dict):
        raise DocError(where, "expected an object")
    try:
        spec = FieldSpec(doc.get("kind", "rational"), int(doc.get("order", 1)))
    except (TypeError, ValueError) as exc:
        raise DocError(where, str(exc)) from exc
    return Field(spec.order)


def parse_algebra(doc, where="$") -> LieAlgebra:
    """AlgebraDoc, or {"standard": name, "params": ...} for the built-in families."""
    if not isinstance(doc, dict):
        raise DocError(where, "expected an object")
    field = parse_field(doc.get("field"), f"{where}.field")
    if "standard" in doc:
        params = doc.get("params")
        if isinstance(params, dict):
            params = parse_algebra(params, f"{where}.params")
        try:
            return standard_algebra(str(doc["standard"]), params, field)
        except CocycleKitError as exc:
            raise DocError(f"{where}.standard", str(exc)) from exc
    basis = _need(doc, "basis", where)
    if not isinstance(basis, list) or not all(isinstance(b, str) for b in basis):
        raise DocError(f"{where}.basis", "expected a list of names")
    table = {}
    for t, br in enumerate(doc.get("brackets", [])):
        loc = f"{where}.brackets[{t}]"
        x, y = _need(br, "x", loc), _need(br, "y", loc)
        for key, nm in (("x", x), ("y", y)):
            if nm not in basis:
                raise DocError(f"{loc}.{key}", f"unknown basis element {nm!r}")
        out = {}
        for s, entry in enumerate(_need(br, "out", loc)):
            if not (isinstance(entry, list) and len(entry) == 2):
                raise DocError(f"{loc}.out[{s}]", "expected [basis, scalar]")
            nm, a = entry
            if nm not in basis:
                raise DocError(f"{loc}.out[{s}]", f"unknown basis element {nm!r}")
            try:
                out[nm] = out.get(nm, 0) + field(a)
            except ValidationError as exc:
                raise DocError(f"{loc}.out[{s}]", str(exc)) from exc
        if (x, y) in table or (y, x) in table:
            raise DocError(loc, f"bracket [{x},{y}] given twice")
        table[(x, y)] = out
    return lie_from_structure(field, basis, table, label=str(doc.get("name", "")))


def parse_matrix(doc, field: Field, n: int, where: str) -> list[list]:
    if not (isinstance(doc, list) and len(doc) == n and all(isinstance(r, list) and len(r) == n for r in doc)):
        raise DocError(where, f"expected a {n}x{n} matrix")
    try:
        return [[field(a) for a in row] for row in doc]
    except ValidationError as exc:
        raise DocError(where, str(exc)) from exc


def load_json(path: str):
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise ValidationError(f"{path}: {exc.strerror}") from exc
    try:
        return json.loads(raw.decode("utf-8")), hashlib.sha256(raw).hexdigest()
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ValidationError(f"{path}: invalid JSON ({exc})") from exc


def module_for(g: LieAlgebra, name: str) -> ModuleAction:
    if name == "trivial":
        return trivial_module(g)
    if name == "adjoint":
        return adjoint_module(g)
    if name == "coadjoint":
        return coadjoint_module(g)
    raise ValidationError(f"unknown module {name!r} (trivial, adjoint, coadjoint)")


def report(command: str, inputs: dict, result: dict) -> dict:
    return {"command": command, "conventions": CONVENTIONS, "version": __version__,
            "inputs_digest": digest(inputs), "result": result}


# ---------------------------------------------------------------- commands

def cmd_validate(args) -> tuple[dict, bool]:
    doc, fdig = load_json(args.path)
    g = parse_algebra(doc)
    emitted = algebra_to_doc(g)
    roundtrip = algebra_digest(parse_algebra(emitted)) == algebra_digest(g)
    result = {"valid": True, "dim": g.dim, "basis": list(g.names), "field": field_json(g.field),
              "algebra_digest": algebra_digest(g), "algebra": emitted, "roundtrip": roundtrip}
    return report("validate", {"file": fdig}, result), roundtrip


def cmd_cohomology(args) -> tuple[dict, bool]:
    from .ce import ce_d, cohomology

    doc, fdig = load_json(args.path)
    g = parse_algebra(doc)
    V = module_for(g, args.module)
    rep = cohomology(g, V, args.degree)
    ok = all(not ce_d(c) for c in rep.representatives) if args.degree + 1 <= g.dim else True
    result = {"degree": args.degree, "module": args.module, "dimZ": rep.dim_Z, "dimB": rep.dim_B,
              "dimH": rep.dim_H, "representatives": [cochain_json(c) for c in rep.representatives],
              "representatives_closed": ok}
    return report("cohomology", {"file": fdig, "degree": args.degree, "module": args.module}, result), ok


def form_json(kappa) -> list:
    n = kappa.algebra.dim
    return [[vec_json(kappa.on_basis(i, j)) if kappa.vdim > 1 else scalar_json(kappa.on_basis(i, j)[0])
             for j in range(n)] for i in range(n)]


def cmd_invariant_forms(args) -> tuple[dict, bool]:
    from .ce import cartan_map, ce_d, invariant_sym_forms, universal_form

    doc, fdig = load_json(args.path)
    g = parse_algebra(doc)
    forms = invariant_sym_forms(g)
    ok = all(k.is_invariant() for k in forms)
    if g.dim >= 4:
        ok = ok and all(not ce_d(cartan_map(k)) for k in forms)
    result = {"dim": len(forms), "forms": [form_json(k) for k in forms]}
    if args.universal:
        U = universal_form(g)
        factors = [matrix_json(U.factor(k)) for k in forms]
        result["universal"] = {"dimV": U.dim, "kappa_u": form_json(U.kappa), "factorizations": factors}
        ok = ok and U.dim == len(forms)
    return report("invariant-forms", {"file": fdig, "universal": bool(args.universal)}, result), ok


def pick_form(g: LieAlgebra, name: str):
    """killing, tr(xy), tr(x)tr(y), pairing (cotangent algebras) or invariant:K."""
    from .ce import BilinearFormSym, invariant_sym_forms, killing_form, trace_form

    if name == "killing":
        return killing_form(g)
    if name in ("tr(xy)", "tr(x)tr(y)"):
        if g.matrices is None:
            raise ValidationError("trace forms need a matrix algebra")
        return trace_form(g, name)
    if name == "pairing":
        n = g.dim // 2
        duals = [f"a_{nm}" for nm in g.names[n:]]
        if g.dim % 2 or list(g.names[:n]) != duals:
            raise ValidationError("pairing needs a cotangent algebra (basis a_<x>.., then x..)")
        return BilinearFormSym(g, 1, {(i, n + i): (Fraction(1),) for i in range(n)})
    if name.startswith("invariant:"):
        forms = invariant_sym_forms(g)
        k = int(name.split(":", 1)[1])
        if not 0 <= k < len(forms):
            raise ValidationError(f"only {len(forms)} invariant forms")
        return forms[k]
    raise ValidationError(f"unknown form {name!r}")


def cmd_cartan(args) -> tuple[dict, bool]:
    from .ce import cartan_exactness, cartan_map, ce_d, d_matrix
    from .exactalg import verify_certificate

    doc, fdig = load_json(args.path)
    g = parse_algebra(doc)
    kappa = pick_form(g, args.form)
    gamma = cartan_map(kappa)
    res = cartan_exactness(kappa)
    result = {"form": args.form, "kappa": form_json(kappa), "gamma": cochain_json(gamma), "exact": res.feasible}
    if res.feasible:
        ok = ce_d(res.potential) == gamma
        result["potential"] = cochain_json(res.potential)
    else:
        ok = verify_certificate(d_matrix(g, gamma.module, 2), gamma.vector(), res.certificate)
        result["certificate"] = {str(i): scalar_json(a) for i, a in enumerate(res.certificate) if a}
    result["verified"] = ok
    return report("cartan", {"file": fdig, "form": args.form}, result), ok


def _loop_triples(g, N: int, cap: int = 3000):
    B = g.basis(N)
    count = len(B) * (len(B) - 1) * (len(B) - 2) // 6
    if count <= cap:
        return list(combinations(B, 3)), "exhaustive"
    return g.random_triples(random.Random(0), N, 500), "500 random (seed 0)"


def cmd_loop(args) -> tuple[dict, bool]:
    from .ce import cohomology, trivial_module as triv
    from .mapalg import (MappingAlgebra, curvature_cocycle, kac_moody_pair, pair_cocycle, reduction_residue,
                         type1_cocycle, type2_cocycle, type3_cocycle)

    doc, fdig = load_json(args.path)
    k = parse_algebra(doc)
    g = MappingAlgebra(k, args.r)
    kind = args.cocycle_type
    kappa = pick_form(k, args.form) if kind in ("I", "III", "curvature", "km") else None
    if kind == "I":
        w = type1_cocycle(g, kappa)
    elif kind == "II":
        reps = cohomology(k, triv(k), 2).representatives
        if not reps:
            raise ValidationError("H2(k) = 0: no nontrivial type-II input")
        w = type2_cocycle(g, reps[0])
    elif kind == "III":
        w = type3_cocycle(g, kappa)
    elif kind == "curvature":
        w = curvature_cocycle(g, kappa)
    elif kind == "km":
        w = pair_cocycle(kac_moody_pair(k, kappa, args.r))
    else:
        raise ValidationError(f"unknown cocycle type {kind!r}")
    triples, mode = _loop_triples(g, args.check_window)
    bad = w.closedness_failure(triples)
    result = {"cocycle": kind, "r": args.r, "target": w.target, "window": args.check_window,
              "triples_checked": len(triples), "sampling": mode, "closed": bad is None}
    if bad is not None:
        result["failure"] = {"triple": [repr(x) for x in bad[0]], "d_omega": value_json(bad[1])}
    if kind == "I" and args.r == 1:
        res = reduction_residue(w)
        table = []
        for i, j in combinations(range(k.dim), 2):
            for m in range(-args.check_window, args.check_window + 1):
                val = res(g.basis_element(i, (m,)), g.basis_element(j, (-m,)))
                if val:
                    table.append([k.names[i], k.names[j], m, -m, vec_json(val)])
        result["residue_columns"] = ["x", "y", "m", "n", "residue(x t^m, y t^n)"]
        result["residue_table"] = table
    return report("loop", {"file": fdig, "r": args.r, "type": kind, "form": args.form,
                           "window": args.check_window}, result), bad is None


def parse_multiloop(doc):
    from .multiloop import MultiloopSpec

    kind = doc.get("type", "multiloop")
    if kind == "klein":
        n = int(doc.get("n", 2))
        return "klein", n, None
    if kind != "multiloop":
        raise DocError("$.type", f"unknown multiloop spec type {kind!r}")
    k = parse_algebra(_need(doc, "algebra", "$"), "$.algebra")
    field = parse_field(doc.get("field"), "$.field")
    orders = tuple(int(m) for m in _need(doc, "orders", "$"))
    zetas = tuple(field(z) for z in _need(doc, "zetas", "$"))
    sigmas = [parse_matrix(s, k.field, k.dim, f"$.sigmas[{t}]") for t, s in enumerate(_need(doc, "sigmas", "$"))]
    return "multiloop", k, MultiloopSpec(orders, zetas, sigmas)


def _deg_key(a) -> str:
    return ",".join(str(x) for x in a)


def cmd_multiloop(args) -> tuple[dict, bool]:
    from .multiloop import graded_centroid, klein_bottle_algebra, multiloop_build

    doc, fdig = load_json(args.spec)
    kind, k, spec = parse_multiloop(doc)
    L = klein_bottle_algebra(k, args.window) if kind == "klein" else multiloop_build(k, spec, args.window)
    closure = L.closure_failure(min(args.window, 2))
    result = {"type": kind, "r": L.r, "window": args.window, "label": L.label,
              "dims": {_deg_key(a): d for a, d in L.dims().items()}, "closed_under_bracket": closure is None,
              "grading_axes": L.grading_axes()}
    ok = closure is None
    if args.centroid:
        if kind == "klein":
            c = graded_centroid(L, args.window, degree_window=1, width=2)
        else:
            c = graded_centroid(L, args.window, degree_window=2)
        wd = c.witness_degree()
        result["centroid"] = {"method": c.method, "width": c.width,
                              "dims": {_deg_key(d): c.dims[d] for d in c.degrees},
                              "fixed_ring": {_deg_key(d): c.fixed_ring[d] for d in c.degrees},
                              "full_ring": {_deg_key(d): c.full_ring[d] for d in c.degrees},
                              "matches_fixed_ring": c.matches_fixed_ring(),
                              "witness_degree": None if wd is None else _deg_key(wd)}
    return report("multiloop", {"file": fdig, "window": args.window, "centroid": bool(args.centroid)}, result), ok


def _cert_json(cert) -> dict:
    out = {"window": cert.window, "status": cert.status, "nrows": cert.nrows, "ncols": cert.ncols}
    if cert.feasible:
        out["potential"] = [{"axis": i, "exp": list(a), "value": value_json(v)}
                            for (i, a), v in sorted(cert.potential.items(), key=lambda kv: (kv[0][0], kv[0][1]))]
    else:
        out["certificate"] = {str(i): scalar_json(a) for i, a in enumerate(cert.certificate) if a}
        out["y.w"] = scalar_json(cert.info["y.w"])
    return out


def cmd_witt(args) -> tuple[dict, bool]:
    from .mapalg import type1_cocycle
    from .vfields import (batch_independence, beta_cup_psibar1, coboundary_of, constant_function_cocycle,
                          gl_mapping_algebra, kappa_trace, psi_k, psibar2_cocycle, psibar_k, pullback_cocycle,
                          virasoro_cocycle, virasoro_shift_potential, window_coboundary_cert, witt, VFieldAlgebra)

    N = args.window
    ok = True
    result: dict = {"window": N}
    if args.virasoro:
        vir = virasoro_cocycle()
        pb = pullback_cocycle(type1_cocycle(gl_mapping_algebra(1), kappa_trace(1, "tr(xy)")))
        W1 = VFieldAlgebra(1)
        shifted = vir + coboundary_of(virasoro_shift_potential(), W1, None, "scalar", 1)
        table = []
        for m in range(-N, N + 1):
            v = vir(witt(m), witt(-m))[0]
            p = pb(witt(m), witt(-m)).integral(0) * 2
            s = shifted(witt(m), witt(-m))[0]
            table.append([m, scalar_json(v), scalar_json(p[0]), scalar_json(s)])
            ok = ok and v == 2 * m ** 3 and p[0] == v and s == 2 * (m ** 3 - m)
        result.update({"cocycle": "virasoro", "normal_form": "2*m^3", "c_prime": "2",
                       "columns": ["m", "omega(L_m,L_-m)", "integral of theta*(2 omega_tr(xy))",
                                   "after shift beta(L_0)=-1"],
                       "table": table, "identities_hold": ok})
        if args.certify:
            cert = window_coboundary_cert(vir, N)
            result["certificate"] = _cert_json(cert)
            result["lower_bound_dim_H2"] = 0 if cert.feasible else 1
    elif args.psi is not None:
        kk = args.psi
        if kk not in (1, 2):
            raise ValidationError("--psi takes 1 or 2")
        table = []
        for m in range(-N, N + 1):
            if kk == 1:
                table.append([m, value_json(psi_k(1, witt(m))), value_json(psibar_k(1, witt(m)))])
            else:
                table.append([m, value_json(psibar_k(2, witt(m), witt(-m)))])
        result.update({"cocycle": f"psi{kk}", "table": table})
        if args.certify and kk == 1:
            A, V1 = beta_cup_psibar1(), constant_function_cocycle(virasoro_cocycle())
            ic = batch_independence([A, V1], N)
            ok = ic.verify() if ic.independent else True
            result["independence"] = {"cocycles": ["beta cup psibar1", "virasoro * 1"], "independent": ic.independent,
                                      "verified": ok, "lower_bound_dim_H2_functions": 2 if ic.independent else None,
                                      "upper_bound": "not verified"}
        elif args.certify:
            cert = window_coboundary_cert(psibar2_cocycle(1), N)
            result["certificate"] = _cert_json(cert)
    else:
        raise ValidationError("witt needs --virasoro or --psi k")
    return report("witt", {"virasoro": bool(args.virasoro), "psi": args.psi, "window": N,
                           "certify": bool(args.certify)}, result), ok


def parse_semidirect(doc):
    n = parse_algebra(_need(doc, "n", "$"), "$.n")
    g = parse_algebra(_need(doc, "g", "$"), "$.g")
    action = _need(doc, "action", "$")
    if not (isinstance(action, list) and len(action) == g.dim):
        raise DocError("$.action", f"expected {g.dim} matrices")
    S = tuple(parse_matrix(m, n.field, n.dim, f"$.action[{t}]") for t, m in enumerate(action))
    return SemidirectData(n, g, S), doc.get("module", "trivial")


def semidirect_module(data: SemidirectData, spec) -> ModuleAction | None:
    from .semidirect import character_module

    if spec == "trivial":
        return None
    h = semidirect_sum(data)
    if spec in ("adjoint", "coadjoint"):
        return module_for(h, spec)
    if spec == "character":
        return character_module(data)
    if isinstance(spec, dict) and "rho" in spec:
        rho = spec["rho"]
        if not (isinstance(rho, list) and len(rho) == h.dim):
            raise DocError("$.module.rho", f"expected {h.dim} matrices")
        d = len(rho[0]) if rho else 0
        return ModuleAction(h, d, [parse_matrix(m, h.field, d, f"$.module.rho[{t}]") for t, m in enumerate(rho)])
    raise DocError("$.module", "expected trivial, adjoint, coadjoint, character or {rho: [...]}")


def cmd_semidirect(args) -> tuple[dict, bool]:
    from .semidirect import standard_instances, verify_exact_sequence

    if args.instance:
        inst = standard_instances()
        if args.instance not in inst:
            raise ValidationError(f"unknown instance {args.instance!r}; choose from {sorted(inst)}")
        data, V = inst[args.instance]
        inputs = {"instance": args.instance}
    elif args.path:
        doc, fdig = load_json(args.path)
        data, mspec = parse_semidirect(doc)
        V = semidirect_module(data, mspec)
        inputs = {"file": fdig}
    else:
        raise ValidationError("semidirect needs a spec file or --instance")
    rep = verify_exact_sequence(data, V, label=args.instance or "")
    result = {"dims": rep.dims, "phi": matrix_json(rep.phi), "R": matrix_json(rep.R),
              "gamma_minus_eta": matrix_json(rep.gamma_minus_eta),
              "exact_at_H2h": rep.exact_at_h2h, "exact_at_middle": rep.exact_at_middle,
              "bracket_group_equals_invariants": rep.bracket_equals_invariant,
              "RI_zero": rep.inflation.ri_zero, "RgI_is_inclusion": rep.inflation.rg_is_inclusion,
              "corollary_applies": rep.corollary_applies, "restriction_bijective": rep.restriction_bijective,
              "counterexample": None if rep.counterexample is None else
              {**rep.counterexample, "vector": vec_json(rep.counterexample["vector"])}}
    ok = rep.exact and rep.inflation.ok and rep.bracket_equals_invariant
    if rep.corollary_applies:
        ok = ok and rep.restriction_bijective
    return report("semidirect", inputs, result), ok


# ---------------------------------------------------------------- entry point

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cocyclekit", description="Exact Lie algebra cocycle computations.")
    p.add_argument("--format", choices=["json", "table"], default="json")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="parse an algebra file and check Jacobi")
    s.add_argument("path")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("cohomology", help="H^p(g, V) with representatives")
    s.add_argument("path")
    s.add_argument("--degree", type=int, required=True)
    s.add_argument("--module", default="trivial", choices=["trivial", "adjoint", "coadjoint"])
    s.set_defaults(func=cmd_cohomology)

    s = sub.add_parser("invariant-forms", help="invariant symmetric bilinear forms")
    s.add_argument("path")
    s.add_argument("--universal", action="store_true")
    s.set_defaults(func=cmd_invariant_forms)

    s = sub.add_parser("cartan", help="is Gamma(kappa) a coboundary")
    s.add_argument("path")
    s.add_argument("--form", default="killing")
    s.set_defaults(func=cmd_cartan)

    s = sub.add_parser("loop", help="cocycles on k (x) Laurent polynomials")
    s.add_argument("path")
    s.add_argument("--r", type=int, default=1)
    s.add_argument("--cocycle-type", default="I", choices=["I", "II", "III", "curvature", "km"])
    s.add_argument("--form", default="killing")
    s.add_argument("--check-window", type=int, default=2)
    s.set_defaults(func=cmd_loop)

    s = sub.add_parser("multiloop", help="graded dimensions and centroid of a multiloop spec")
    s.add_argument("spec")
    s.add_argument("--window", type=int, default=3)
    s.add_argument("--centroid", action="store_true")
    s.set_defaults(func=cmd_multiloop)

    s = sub.add_parser("witt", help="Virasoro and trace cocycles on vector fields of the circle")
    grp = s.add_mutually_exclusive_group(required=True)
    grp.add_argument("--virasoro", action="store_true")
    grp.add_argument("--psi", type=int)
    s.add_argument("--window", type=int, default=3)
    s.add_argument("--certify", action="store_true")
    s.set_defaults(func=cmd_witt)

    s = sub.add_parser("semidirect", help="exact sequence for abelian extensions of n x| g")
    s.add_argument("path", nargs="?")
    s.add_argument("--instance")
    s.set_defaults(func=cmd_semidirect)
    return p


def render(doc: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=True) + "\n"
    lines = [f"command      {doc['command']}", f"conventions  {doc['conventions']}",
             f"inputs       {doc.get('inputs_digest', '')[:16]}"]
    res = doc.get("result") or {}
    for key in sorted(res):
        val = res[key]
        if isinstance(key, str) and key == "table" and isinstance(val, list):
            lines.append("table")
            lines.extend("  " + "  ".join(json.dumps(c, ensure_ascii=True) for c in row) for row in val)
            continue
        text = json.dumps(val, sort_keys=True, ensure_ascii=True)
        lines.append(f"{key:<12} {text if len(text) <= 100 else text[:97] + '...'}")
    if "error" in doc:
        lines.append(f"error        {doc['error']['type']}: {doc['error']['message']}")
    return "\n".join(lines) + "\n"


def _witness_json(w):
    if w is None or isinstance(w, (str, int, bool)):
        return w
    if isinstance(w, (list, tuple)):
        return [_witness_json(x) for x in w]
    if isinstance(w, dict):
        return {str(k): _witness_json(v) for k, v in w.items()}
    return repr(w)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        doc, ok = args.func(args)
        code = 0 if ok else 2
    except InconsistencyError as exc:
        doc = {"command": args.command, "conventions": CONVENTIONS, "version": __version__,
               "error": {"type": type(exc).__name__, "message": str(exc), "witness": _witness_json(exc.witness)}}
        code = 2
    except ValidationError as exc:
        doc = {"command": args.command, "conventions": CONVENTIONS, "version": __version__,
               "error": {"type": type(exc).__name__, "message": str(exc), "witness": _witness_json(exc.witness)}}
        code = 1
    sys.stdout.write(render(doc, args.format))
    if code == 1:
        sys.stderr.write(f"error: {doc['error']['message']}\n")
    elif code == 2:
        sys.stderr.write("internal inconsistency: a checked identity failed\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
