"""Batch command line front end.

Every subcommand builds its inputs from flags and/or a TOML config file,
runs one library operation and writes a report to stdout (``json``, ``tsv``
or ``pretty``).  Diagnostics go to stderr.

Exit status: 0 success / holds, 1 fails (or a refused hypothesis),
2 inconclusive or a cap was hit, 64 bad input, 70 internal error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import traceback
from fractions import Fraction
from typing import Any, Sequence

from . import __version__
from . import _lattice as la
from .crystals import DEFAULT_CRYSTAL_CAP, enumerate_B, phi_profile, stabilize
from .errors import CapExceeded, HypothesisFailed, InternalInconsistency, MetawhitError
from .forms import BilinearForm, barkappa_multiple
from .metaplectic import MetaplecticDatum, abbgm_compare, coset_analysis, restricted_coweights, simply_connected_check
from .propc import WITNESS_SWEEP_CAP, check_property_c, forbidden_divisors, verify_witness
from .repthy import DEFAULT_SUPPORT_CAP, character_drops, dominant_character, tensor_decompose, weyl_dim_labels
from .rootdata import RootDatum, Weight, build
from . import whittaker as wh

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

EXIT_OK, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 64, 70
BIG = 2**53


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ------------------------------------------------------------------ options

COMMON_KEYS = {"command", "type", "central_rank", "isogeny", "format", "threads", "caps"}
MD_KEYS = {"barkappa", "m", "N"}
CAP_KEYS = {"support", "crystal", "sweep"}

COMMAND_KEYS = {
    "rootdata": set(),
    "metaplectic": MD_KEYS | {"cosets"},
    "property-c": MD_KEYS | {"witness", "mode", "divisors"},
    "rep": {"highest", "dim", "weights", "tensor"},
    "crystal": {"highest", "list", "stable", "nu", "phi_geom", "word"},
    "decompose": MD_KEYS | {"lambda", "assume_subtop"},
    "csh": MD_KEYS | {"gamma", "mu", "nu"},
    "hecke": MD_KEYS | {"gamma", "on", "assume_subtop"},
    "compare-abbgm": {"m", "ell"},
}


def _add_common(p: argparse.ArgumentParser, md: bool) -> None:
    p.add_argument("--config", help="TOML file with the same keys as the flags")
    p.add_argument("--type", help='Cartan type, e.g. "C3" or "A2xA1"')
    p.add_argument("--central-rank", type=int, dest="central_rank")
    p.add_argument("--isogeny", choices=["sc", "adjoint"])
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_const", const="json", dest="format")
    fmt.add_argument("--tsv", action="store_const", const="tsv", dest="format")
    fmt.add_argument("--pretty", action="store_const", const="pretty", dest="format")
    p.add_argument("--threads", type=int)
    if md:
        p.add_argument("--barkappa", help='"m*kappa" (default), "3*kappa" or "gram:[[...]]" on the lattice basis')
        p.add_argument("--m", help="multiple of the normalized form (integer or fraction)")
        p.add_argument("--N", type=int)


def make_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="metawhit", description="Metaplectic dual data, Property (C), crystals and Whittaker bookkeeping.")
    p.add_argument("--version", action="version", version=f"metawhit {__version__}")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    s = sub.add_parser("rootdata", help="describe a root datum")
    _add_common(s, False)

    s = sub.add_parser("metaplectic", help="delta_i, L#, dual datum, restricted coweights")
    _add_common(s, True)
    s.add_argument("--cosets", action="store_true", default=None, help="also run the per-coset freeness analysis")

    s = sub.add_parser("property-c", help="Property (C) search or a single witness check")
    _add_common(s, True)
    s.add_argument("--witness", help='"i=4;lambda=..." (1-based node)')
    s.add_argument("--mode", choices=["full_search", "witness_only"])
    s.add_argument("--divisors", action="store_true", default=None, help="report the forbidden divisors of kappa")

    s = sub.add_parser("rep", help="dimension, weights and tensor products")
    _add_common(s, False)
    s.add_argument("--highest", help='"omega2", "2*omega1+omega3" or labels "1,0"')
    s.add_argument("--dim", action="store_true", default=None)
    s.add_argument("--weights", action="store_true", default=None)
    s.add_argument("--tensor", help="second highest weight")

    s = sub.add_parser("crystal", help="elements of B(lambda) or stable elements of B_g(nu)")
    _add_common(s, False)
    s.add_argument("--highest")
    s.add_argument("--list", action="store_true", default=None)
    s.add_argument("--stable", action="store_true", default=None)
    s.add_argument("--nu", help="coroot coordinates, e.g. 1,1")
    s.add_argument("--phi-geom", action="store_true", default=None, dest="phi_geom")
    s.add_argument("--word", help="reduced word of w0, 1-based, e.g. 1,2,1")

    s = sub.add_parser("decompose", help="the table mu -> dim V^lambda_mu")
    _add_common(s, True)
    s.add_argument("--lambda", dest="lambda")
    s.add_argument("--assume-subtop", action="store_true", default=None, dest="assume_subtop")

    s = sub.add_parser("csh", help="Casselman-Shalika H^0 count")
    _add_common(s, True)
    s.add_argument("--gamma")
    s.add_argument("--mu")
    s.add_argument("--nu")

    s = sub.add_parser("hecke", help="action of V(gamma) on Whittaker classes")
    _add_common(s, True)
    s.add_argument("--gamma")
    s.add_argument("--on", action="append", help='a label lambda, optionally "k*[...]"; repeatable')
    s.add_argument("--assume-subtop", action="store_true", default=None, dest="assume_subtop")

    s = sub.add_parser("compare-abbgm", help="compare with the quantum-group normalization")
    _add_common(s, False)
    s.add_argument("--m", type=int)
    s.add_argument("--ell", type=int)
    return p


def _load_config(path: str) -> dict:
    try:
        with open(path, "rb") as fh:
            return tomllib.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read config: {exc}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise UsageError(f"config is not valid TOML: {exc}") from exc


def resolve_options(argv: Sequence[str]) -> dict:
    """Merge config file and flags (flags win) and validate the keys."""
    ns = make_parser().parse_args(list(argv))
    flags = {k: v for k, v in vars(ns).items() if v is not None and k != "config"}
    cfg = _load_config(ns.config) if getattr(ns, "config", None) else {}
    command = flags.get("command") or cfg.get("command")
    if command not in COMMAND_KEYS:
        raise UsageError(f"no or unknown command {command!r}")
    if cfg.get("command", command) != command:
        raise UsageError("config command does not match the subcommand")
    allowed = COMMON_KEYS | COMMAND_KEYS[command]
    unknown = sorted(set(cfg) - allowed)
    if unknown:
        raise UsageError(f"unknown config keys: {', '.join(unknown)}")
    caps = cfg.get("caps", {})
    if not isinstance(caps, dict) or set(caps) - CAP_KEYS:
        raise UsageError(f"caps must be a table with keys among {sorted(CAP_KEYS)}")
    opts = dict(cfg)
    opts.update(flags)
    opts["command"] = command
    opts.setdefault("format", "pretty")
    opts.setdefault("threads", 1)
    if opts["format"] not in ("json", "tsv", "pretty"):
        raise UsageError(f"unknown format {opts['format']!r}")
    if "type" not in opts:
        raise UsageError("--type is required")
    return opts


# ------------------------------------------------------------------ input parsing

_TERM = re.compile(r"\s*([+-]?)\s*(?:(\d+(?:/\d+)?)\s*\*?\s*)?(omega|alpha|w|a)(\d+)\s*")


def _numbers(text: str) -> list[Fraction]:
    text = text.strip().strip("[]()")
    if not text:
        return []
    try:
        return [Fraction(x.strip()) for x in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"cannot parse number list {text!r}") from exc


def _ints(text: str) -> tuple[int, ...]:
    v = _numbers(text)
    if not la.is_integral(v):
        raise UsageError(f"expected integers: {text!r}")
    return la.int_vec(v)


def _from_labels(rd: RootDatum, labels: Sequence) -> Weight:
    if not la.is_integral(labels):
        raise UsageError("labels must be integers")
    c, _ = la.solve_int_left(rd.root_dual_coords_T, la.int_vec(labels))
    if c is None:
        raise UsageError(f"no coweight with labels {tuple(labels)}")
    return rd.from_basis(c)


def parse_weight(rd: RootDatum, text: str, default: str = "basis") -> Weight:
    """Parse a coweight.

    Accepted forms: ``labels:1,0``, ``basis:1,2`` (lattice basis coordinates),
    ``ambient:1,-1``, ``coroot:1,1`` (simple coroot coordinates), sums of
    terms like ``2*omega1 + alpha3`` (1-based), or a bare list read in the
    ``default`` mode.
    """
    text = str(text).strip()
    mode, _, body = text.partition(":")
    if not body:
        mode, body = default, text
    if mode in ("labels", "basis", "ambient", "coroot") and not re.search(r"[a-z]", body):
        v = _numbers(body)
        if mode == "labels":
            if len(v) != rd.rank:
                raise UsageError(f"expected {rd.rank} labels")
            return _from_labels(rd, v)
        if mode == "basis":
            if len(v) != rd.lattice_dim:
                raise UsageError(f"expected {rd.lattice_dim} basis coordinates")
            w = rd.from_basis(v)
        elif mode == "ambient":
            if len(v) != rd.ambient_dim:
                raise UsageError(f"expected {rd.ambient_dim} ambient coordinates")
            w = Weight(tuple(v), "L")
        else:
            if len(v) != rd.rank:
                raise UsageError(f"expected {rd.rank} coroot coordinates")
            w = rd.coroot_combo(v)
        if not rd.in_lattice(w):
            raise UsageError(f"{text!r} is not in the coweight lattice")
        return w
    if mode not in ("labels", "basis", "ambient", "coroot"):
        body = text
    pos, total = 0, Weight(tuple(Fraction(0) for _ in range(rd.ambient_dim)), "L")
    while pos < len(body):
        m = _TERM.match(body, pos)
        if not m or m.end() == pos:
            raise UsageError(f"cannot parse weight {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        coef = Fraction(m.group(2) or 1) * sign
        k = int(m.group(4)) - 1
        if not 0 <= k < rd.rank:
            raise UsageError(f"node {k + 1} out of range")
        vec = rd.omega_vecs[k] if m.group(3) in ("omega", "w") else rd.coroot_vecs[k]
        total = total + Weight(la.vscale(coef, vec), "L")
        pos = m.end()
    if not rd.in_lattice(total):
        raise UsageError(f"{text!r} is not in the coweight lattice")
    return total


def parse_labels(rd: RootDatum, text: str) -> tuple[int, ...]:
    """Dominant labels: a bare list (or ``labels:...``) is read as labels,
    ``omega``/``alpha`` expressions need not lie in the lattice."""
    text = str(text).strip()
    mode, _, body = text.partition(":")
    if not body and re.search(r"[a-z]", text):
        return _parse_label_expr(rd, text)
    if body and mode != "labels":
        l = rd.labels(parse_weight(rd, text))
    else:
        l = _numbers(body if body else text)
    if len(l) != rd.rank or not la.is_integral(l) or min(l, default=0) < 0:
        raise UsageError(f"{text!r} does not give dominant integral labels")
    return la.int_vec(l)


def _parse_label_expr(rd: RootDatum, text: str) -> tuple[int, ...]:
    """Labels of a combination of omega_i and alpha_i (no lattice condition)."""
    out = [Fraction(0)] * rd.rank
    pos = 0
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise UsageError(f"cannot parse weight {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        coef = Fraction(m.group(2) or 1) * sign
        k = int(m.group(4)) - 1
        if not 0 <= k < rd.rank:
            raise UsageError(f"node {k + 1} out of range")
        if m.group(3) in ("omega", "w"):
            out[k] += coef
        else:
            for j in range(rd.rank):
                out[j] += coef * rd.cartan[k][j]
        pos = m.end()
    if not la.is_integral(out) or min(out) < 0:
        raise UsageError(f"{text!r} does not give dominant integral labels")
    return la.int_vec(out)


def _require(opts: dict, key: str) -> Any:
    if key not in opts:
        raise UsageError(f"--{key.replace('_', '-')} is required for {opts['command']}")
    return opts[key]


def build_root_datum(opts: dict) -> RootDatum:
    return build(opts["type"], int(opts.get("central_rank", 0)), opts.get("isogeny", "sc"))


_KAPPA = re.compile(r"(m|\d+(?:/\d+)?)?\*?kappa")


def build_md(rd: RootDatum, opts: dict) -> MetaplecticDatum:
    N = int(_require(opts, "N"))
    if N <= 0:
        raise UsageError("N must be positive")
    bk = opts.get("barkappa", "m*kappa")
    if isinstance(bk, dict):
        if set(bk) != {"gram"}:
            raise UsageError("barkappa table must contain exactly the key 'gram'")
        gram = bk["gram"]
    elif isinstance(bk, str) and (mk := _KAPPA.fullmatch(bk.replace(" ", ""))):
        m = Fraction(str(opts.get("m", 1)))
        if mk.group(1) not in (None, "m"):
            m *= Fraction(mk.group(1))
        return MetaplecticDatum(rd, barkappa_multiple(rd, m), N)
    elif isinstance(bk, str) and bk.startswith("gram:"):
        try:
            gram = json.loads(bk[5:])
        except json.JSONDecodeError as exc:
            raise UsageError(f"cannot parse gram matrix: {exc}") from exc
    else:
        raise UsageError(f"cannot parse barkappa {bk!r}")
    n = rd.lattice_dim
    if len(gram) != n or any(len(r) != n for r in gram):
        raise UsageError(f"gram matrix must be {n} x {n}")
    return MetaplecticDatum(rd, BilinearForm(rd, tuple(tuple(Fraction(str(x)) for x in r) for r in gram)), N)


# ------------------------------------------------------------------ commands


class Outcome:
    def __init__(self, result: dict, status: str = "ok", code: int = EXIT_OK, table=None):
        self.result = result
        self.status = status
        self.code = code
        self.table = table  # (header, rows) for tsv / pretty


def cmd_rootdata(rd: RootDatum, opts: dict) -> Outcome:
    res = {
        "name": rd.name,
        "type": rd.type_string(),
        "rank": rd.rank,
        "lattice_dim": rd.lattice_dim,
        "cartan": [list(r) for r in rd.cartan],
        "symmetrizer": list(rd.symmetrizer),
        "positive_roots": len(rd.positive_roots),
        "weyl_group_order": rd.weyl_group_order,
        "w0_word": [i + 1 for i in rd.w0_word],
        "lattice_basis": [list(b) for b in rd.basis],
        "simple_coroots": [list(a) for a in rd.coroot_vecs],
        "simple_roots": [list(r) for r in rd.root_dual_coords],
        "center_basis": [list(c) for c in rd.center_basis],
    }
    return Outcome(res)


def cmd_metaplectic(rd: RootDatum, opts: dict) -> Outcome:
    md = build_md(rd, opts)
    sc, factors = simply_connected_check(md.dual)
    res = {
        "N": md.N,
        "delta": list(md.delta),
        "varrho_alpha": [md.q(rd.simple_coroot(i)) for i in range(rd.rank)],
        "lambda_sharp_basis": [list(r) for r in md.sharp_basis],
        "lambda_sharp_basis_ambient": [w.to_json() for w in md.sharp_weights()],
        "index": md.index,
        "dual_type": md.dual.type_string(),
        "dual_cartan": [list(r) for r in md.dual.cartan],
        "dual_simply_connected": sc,
        "dual_fundamental_group_factors": factors,
        "restricted": [w.to_json() for w in restricted_coweights(md, modulo_center=bool(rd.center_basis))],
        "restricted_modulo_center": bool(rd.center_basis),
    }
    if opts.get("cosets"):
        res["cosets"] = coset_analysis(md).to_json()
    return Outcome(res)


def _parse_witness(rd: RootDatum, text: str) -> tuple[int, Weight]:
    parts = dict(p.split("=", 1) for p in text.split(";") if "=" in p)
    if set(parts) != {"i", "lambda"}:
        raise UsageError('witness must look like "i=4;lambda=..."')
    i = int(parts["i"]) - 1
    return i, parse_weight(rd, parts["lambda"], default="coroot")


def cmd_property_c(rd: RootDatum, opts: dict) -> Outcome:
    md = build_md(rd, opts)
    if "witness" in opts:
        i, lam = _parse_witness(rd, opts["witness"])
        ok, deg = verify_witness(md, i, lam)
        res = {"node": i + 1, "lambda": lam.to_json(), "divisible": ok, "divisor": deg,
               "kbar_lambda_minus_alpha": list(md.kbar.image(lam - rd.simple_coroot(i)).coords)}
        return Outcome(res, "fails" if ok else "holds_at_witness", EXIT_FAIL if ok else EXIT_OK)
    sweep = int(opts.get("caps", {}).get("sweep", WITNESS_SWEEP_CAP))
    rep = check_property_c(md, opts.get("mode"), sweep, threads=int(opts["threads"]))
    res = {"property_c": rep.to_json()}
    hyp = [md.q(rd.simple_coroot(i)).denominator != 1 for i in range(rd.rank)]
    res["hypothesis_varrho_not_integral"] = hyp
    if rep.verdict == "holds" and all(hyp):
        res["subtop"] = "certified"
    elif not all(hyp):
        res["subtop"] = "unknown: varrho(alpha_i) is integral for some node"
    else:
        res["subtop"] = "unknown: (C)-route unavailable" if rep.verdict == "fails" else "unknown: (C) search inconclusive"
    if opts.get("divisors"):
        if rd.lattice_dim != rd.rank:
            raise UsageError("--divisors needs a semisimple type")
        res["divisors"] = forbidden_divisors(rd, barkappa_multiple(rd, 1)).to_json()
    code = {"holds": EXIT_OK, "fails": EXIT_FAIL}.get(rep.verdict, EXIT_INCONCLUSIVE)
    table = (["node", "lambda_coroot_coords", "divisor"], [[w.node + 1, list(w.drop), w.degree] for w in rep.witnesses])
    return Outcome(res, rep.verdict, code, table)


def cmd_rep(rd: RootDatum, opts: dict) -> Outcome:
    l = parse_labels(rd, _require(opts, "highest"))
    cap = int(opts.get("caps", {}).get("support", DEFAULT_SUPPORT_CAP))
    res: dict = {"highest_labels": list(l), "dim": weyl_dim_labels(rd, l)}
    table = None
    if opts.get("dim") and not opts.get("weights") and "tensor" not in opts:
        return Outcome(res, table=(["dim"], [[res["dim"]]]))
    top = _from_labels(rd, l)
    if opts.get("weights"):
        ch = character_drops(rd, l, cap)
        rows = []
        for n, m in sorted(ch.items(), key=lambda t: (sum(t[0]), t[0])):
            lab = tuple(a - b for a, b in zip(l, rd.labels_of_coroot_combo(n)))
            rows.append([list(lab), list(n), m])
        res["weights"] = [{"labels": a, "drop": b, "mult": c} for a, b, c in rows]
        table = (["labels", "drop", "mult"], rows)
    else:
        dom = dominant_character(rd, top)
        res["dominant"] = [{"labels": list(rd.labels(w)), "mult": m} for w, m in sorted(dom.items(), key=lambda t: rd.labels(t[0]), reverse=True)]
        table = (["labels", "mult"], [[d["labels"], d["mult"]] for d in res["dominant"]])
    if "tensor" in opts:
        l2 = parse_labels(rd, opts["tensor"])
        dec = tensor_decompose(rd, top, _from_labels(rd, l2), cap)
        res["tensor"] = [{"labels": list(rd.labels(w)), "mult": m} for w, m in dec.items()]
        table = (["labels", "mult"], [[d["labels"], d["mult"]] for d in res["tensor"]])
    return Outcome(res, table=table)


def cmd_crystal(rd: RootDatum, opts: dict) -> Outcome:
    word = None
    if "word" in opts:
        word = tuple(i - 1 for i in _ints(str(opts["word"])))
    if opts.get("stable"):
        nu = _ints(str(_require(opts, "nu")))
        els = stabilize(rd, nu, word=word)
        rows, out = [], []
        for x in els:
            d = x.to_json()
            if opts.get("phi_geom"):
                d["phi_geom"] = list(phi_profile(x))
            out.append(d)
            rows.append([d["strings"]] + ([d["phi_geom"]] if opts.get("phi_geom") else []))
        res = {"nu": list(nu), "word": [i + 1 for i in (word or rd.w0_word)], "count": len(els), "elements": out}
        header = ["strings"] + (["phi_geom"] if opts.get("phi_geom") else [])
        return Outcome(res, table=(header, rows))
    l = parse_labels(rd, _require(opts, "highest"))
    cap = int(opts.get("caps", {}).get("crystal", DEFAULT_CRYSTAL_CAP))
    els = enumerate_B(rd, l, cap)
    res: dict = {"highest_labels": list(l), "size": len(els), "dim": weyl_dim_labels(rd, l)}
    table = (["size"], [[len(els)]])
    if opts.get("list"):
        w = rd.w0_word if word is None else word
        rows = sorted([list(b.string_coords(w)), list(b.labels), list(b.drop)] for b in els)
        rows.sort(key=lambda r: (sum(r[2]), r[2], r[0]))
        res["word"] = [i + 1 for i in w]
        res["elements"] = [{"strings": a, "labels": b, "drop": c} for a, b, c in rows]
        table = (["strings", "labels", "drop"], rows)
    return Outcome(res, table=table)


def cmd_decompose(rd: RootDatum, opts: dict) -> Outcome:
    md = build_md(rd, opts)
    lam = parse_weight(rd, _require(opts, "lambda"))
    tab = wh.decompose(md, lam, assume_subtop=bool(opts.get("assume_subtop")))
    rows = [[w.to_json(), list(rd.labels(w)), e.value, e.kind] for w, e in tab.entries.items()]
    return Outcome(tab.to_json(), table=(["mu", "labels", "value", "kind"], rows))


def cmd_csh(rd: RootDatum, opts: dict) -> Outcome:
    md = build_md(rd, opts)
    g, m, n = (parse_weight(rd, _require(opts, k)) for k in ("gamma", "mu", "nu"))
    r = wh.csh_h0_dim(md, g, m, n)
    res = {"gamma": g.to_json(), "mu": m.to_json(), "nu": n.to_json(), **r.to_json()}
    return Outcome(res, table=(["value", "kind", "regime"], [[r.value, r.kind, r.regime]]))


def cmd_hecke(rd: RootDatum, opts: dict) -> Outcome:
    md = build_md(rd, opts)
    g = parse_weight(rd, _require(opts, "gamma"))
    K: dict = {}
    on = _require(opts, "on")
    for item in [on] if isinstance(on, str) else on:
        mt = re.match(r"\s*(\d+)\s*\*\s*\[(.*)\]\s*$", item)
        coef, body = (int(mt.group(1)), mt.group(2)) if mt else (1, item)
        w = parse_weight(rd, body)
        K[w] = K.get(w, 0) + coef
    r = wh.hecke_act(md, g, K)
    rows = [[w.to_json(), list(rd.labels(w)), c] for w, c in sorted(r.result.items())]
    res = {"gamma": g.to_json(), "on": [{"lambda": w.to_json(), "coef": c} for w, c in sorted(K.items())], **r.to_json()}
    return Outcome(res, table=(["lambda", "labels", "coef"], rows))


def cmd_compare_abbgm(rd: RootDatum, opts: dict) -> Outcome:
    rep = abbgm_compare(rd, int(_require(opts, "m")), int(_require(opts, "ell")))
    rows = [[k, v] for k, v in sorted(rep.checks.items())]
    return Outcome(rep.to_json(), "passed" if rep.passed else "failed", EXIT_OK if rep.passed else EXIT_FAIL, (["check", "ok"], rows))


COMMANDS = {
    "rootdata": cmd_rootdata,
    "metaplectic": cmd_metaplectic,
    "property-c": cmd_property_c,
    "rep": cmd_rep,
    "crystal": cmd_crystal,
    "decompose": cmd_decompose,
    "csh": cmd_csh,
    "hecke": cmd_hecke,
    "compare-abbgm": cmd_compare_abbgm,
}


# ------------------------------------------------------------------ output


def to_plain(x: Any) -> Any:
    """JSON-safe form: Fractions and large integers become strings."""
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return str(x) if abs(x) >= BIG else x
    if isinstance(x, Fraction):
        return to_plain(x.numerator) if x.denominator == 1 else str(x)
    if isinstance(x, Weight):
        return to_plain(x.to_json())
    if isinstance(x, dict):
        return {str(k): to_plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_plain(v) for v in x]
    raise TypeError(f"cannot serialize {type(x).__name__}")


def _inputs(opts: dict) -> dict:
    return {k: v for k, v in sorted(opts.items()) if k not in ("format", "threads", "command")}


def _cell(v: Any) -> str:
    v = to_plain(v)
    if isinstance(v, list):
        return ",".join(_cell(x) for x in v)
    return str(v).lower() if isinstance(v, bool) else str(v)


def _flatten(d: Any, prefix: str = "") -> list[tuple[str, str]]:
    if isinstance(d, dict):
        out = []
        for k, v in d.items():
            out += _flatten(v, f"{prefix}.{k}" if prefix else str(k))
        return out
    return [(prefix, json.dumps(d) if isinstance(d, list) else _cell(d))]


def render(opts: dict, report: dict, table) -> str:
    fmt = opts["format"]
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    if fmt == "tsv" and table is not None:
        header, rows = table
        return "\n".join(["\t".join(header)] + ["\t".join(_cell(c) for c in r) for r in rows]) + "\n"
    if fmt == "tsv":
        return "".join(f"{k}\t{v}\n" for k, v in _flatten(report["result"]))
    lines = [f"{report['command']}: {report['status']}"]
    for k, v in _flatten(report["result"]):
        if len(v) > 200:
            v = v[:197] + "..."
        lines.append(f"  {k} = {v}")
    return "\n".join(lines) + "\n"


def report_schema() -> dict:
    """The JSON schema shipped with the package for ``--json`` reports."""
    from importlib import resources

    return json.loads(resources.files("metawhit").joinpath("schemas/report.schema.json").read_text())


def run(argv: Sequence[str]) -> tuple[int, str]:
    """Run one command; returns (exit status, report text)."""
    try:
        opts = resolve_options(argv)
    except UsageError as exc:
        print(f"metawhit: {exc}", file=sys.stderr)
        return EXIT_USAGE, ""
    base = {"command": opts["command"], "version": __version__}
    try:
        inputs = to_plain(_inputs(opts))
    except TypeError:
        inputs = {}
    base["input"] = inputs
    try:
        rd = build_root_datum(opts)
        out = COMMANDS[opts["command"]](rd, opts)
        report = {**base, "status": out.status, "result": to_plain(out.result)}
        return out.code, render(opts, report, out.table)
    except UsageError as exc:
        print(f"metawhit: {exc}", file=sys.stderr)
        return EXIT_USAGE, ""
    except CapExceeded as exc:
        report = {**base, "status": "cap_exceeded", "result": {"error": str(exc), "what": exc.what, "size": to_plain(exc.size), "cap": exc.cap}}
        return EXIT_INCONCLUSIVE, render(opts, report, None)
    except HypothesisFailed as exc:
        report = {**base, "status": "hypothesis_failed", "result": {"error": str(exc), "hypothesis": exc.hypothesis}}
        return EXIT_FAIL, render(opts, report, None)
    except (InternalInconsistency, AssertionError) as exc:
        traceback.print_exc(file=sys.stderr)
        print(f"metawhit: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL, ""
    except (MetawhitError, ValueError) as exc:
        print(f"metawhit: {exc}", file=sys.stderr)
        return EXIT_USAGE, ""
    except Exception as exc:  # noqa: BLE001
        traceback.print_exc(file=sys.stderr)
        print(f"metawhit: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL, ""


def main(argv: Sequence[str] | None = None) -> int:
    code, text = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(text)
    sys.stdout.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
