"""Command line interface: ``uqpadic <subcommand> ...``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from dataclasses import asdict, dataclass, field, fields
from fractions import Fraction
from pathlib import Path

from .expr import ParseError, parse_expression
from .report import Report
from .rootdata import RootSystem, beta_sequence, build_root_system
from .scalars import QSpec, format_scalar, format_valuation, is_prime
from .uqcore import AlgebraElement, QuantumGroup, get_group
from .words import WordElement

__all__ = ["SessionConfig", "emit", "run_verify", "main", "CACHE_ENV"]

log = logging.getLogger("uqpadic")

CACHE_ENV = "UQPADIC_CACHE_DIR"
CACHE_SCHEMA_VERSION = 1
FORMATS = ("json", "table", "csv", "expr")


@dataclass
class SessionConfig:
    p: int = 5
    lie_type: str = "A"
    rank: int = 2
    qprime: str | None = None
    word: tuple | None = None
    height_cap: int = 12
    depth_cap: int = 8
    suites: list = field(default_factory=list)
    format: str = "json"
    seed: int = 0

    def validate(self) -> "SessionConfig":
        if not is_prime(self.p) or self.p <= 2:
            raise ValueError(f"p must be an odd prime, got {self.p}")
        if self.lie_type.upper() == "G" and self.p <= 3:
            raise ValueError("G2 needs p > 3")
        if self.height_cap <= 0 or self.depth_cap <= 0:
            raise ValueError("caps must be positive")
        if self.format not in FORMATS:
            raise ValueError(f"unknown format {self.format!r}")
        self.lie_type = self.lie_type.upper()
        return self

    @classmethod
    def from_file(cls, path) -> "SessionConfig":
        data = json.loads(Path(path).read_text())
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        if data.get("word") is not None:
            data["word"] = tuple(data["word"])
        return cls(**data)

    def root_system(self) -> RootSystem:
        return build_root_system(self.lie_type, self.rank)

    def spec(self) -> QSpec:
        rs = self.root_system()
        return QSpec(self.p, rs.d, Fraction(self.qprime) if self.qprime else None)

    def group(self) -> QuantumGroup:
        qg = get_group(self.root_system(), self.spec(), self.word, self.height_cap)
        _load_cache(qg)
        return qg


# -- on-disk cache of root-vector expansions -------------------------------------------


def _cache_file(qg: QuantumGroup) -> Path | None:
    root = os.environ.get(CACHE_ENV)
    if not root:
        return None
    tag = f"{qg.rs.name}_w{''.join(map(str, qg.word))}_p{qg.spec.p}_q{qg.spec.qprime}".replace("/", "-")
    return Path(root) / f"rootvectors_{tag}.json"


def _load_cache(qg: QuantumGroup) -> None:
    path = _cache_file(qg)
    if path is None or not path.exists():
        return
    data = json.loads(path.read_text())
    if data.get("schema_version") != CACHE_SCHEMA_VERSION:
        log.warning("ignoring cache %s with unknown schema version", path)
        return
    for j, entries in data["root_vectors"].items():
        qg._root_words.setdefault(int(j), {tuple(e["word"]): Fraction(e["coeff"]) for e in entries})


def _save_cache(qg: QuantumGroup) -> None:
    path = _cache_file(qg)
    if path is None:
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    vectors = {str(j): [{"word": list(w), "coeff": format_scalar(c)} for w, c in sorted(vec.items())]
               for j, vec in sorted(qg._root_words.items())}
    data = {"schema_version": CACHE_SCHEMA_VERSION, "root_vectors": vectors}
    path.write_text(json.dumps(data, sort_keys=True, indent=1))


# -- output ------------------------------------------------------------------------------


def _to_jsonable(value):
    from .category_o import CartanElement, VermaElement
    from .oqsl2 import OqElement, OqTensor

    if isinstance(value, AlgebraElement):
        return value.parent.to_json(value)
    if isinstance(value, (OqElement, CartanElement, VermaElement, Report)):
        return value.to_json()
    if isinstance(value, OqTensor):
        from .oqsl2 import monomial_json

        return [{"left": monomial_json(a), "right": monomial_json(b), "coeff": format_scalar(c)}
                for (a, b), c in sorted(value.terms.items())]
    if isinstance(value, WordElement):
        return [{"word": [_letter_json(a) for a in w], "coeff": format_scalar(c)}
                for w, c in sorted(value.terms.items(), key=lambda t: repr(t[0]))]
    if isinstance(value, Fraction):
        return format_scalar(value)
    if isinstance(value, float) and value in (float("inf"), float("-inf")):
        return format_valuation(value) if value > 0 else "-inf"
    if isinstance(value, dict):
        return {str(k): _to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_to_jsonable(v) for v in value]
    return value


def _letter_json(a):
    if a[0] == "K":
        return {"K": list(a[1])}
    return f"{a[0]}{a[1] + 1}"


def _rows(value) -> list[dict]:
    """Flatten a value into table rows."""
    from .oqsl2 import OqElement, key_to_word

    if isinstance(value, AlgebraElement):
        return [{"r": " ".join(map(str, d["r"])), "lambda": " ".join(map(str, d["lambda"])),
                 "s": " ".join(map(str, d["s"])), "coeff": d["coeff"]} for d in value.parent.to_json(value)]
    if isinstance(value, OqElement):
        return [{"monomial": key_to_word(k) or "1", "coeff": format_scalar(c)}
                for k, c in sorted(value.terms.items())]
    if isinstance(value, Report):
        return [{"check": c["check"], "instance": json.dumps(_to_jsonable(c["instance"]), sort_keys=True),
                 "pass": c["pass"]} for c in value.checks]
    if isinstance(value, list) and all(isinstance(r, dict) for r in value):
        return [{k: _cell(v) for k, v in r.items()} for r in value]
    if isinstance(value, dict):
        return [{"key": str(k), "value": _cell(v)} for k, v in value.items()]
    return [{"value": _cell(value)}]


def _cell(v):
    v = _to_jsonable(v)
    if isinstance(v, (list, dict)):
        return json.dumps(v, sort_keys=True)
    return v


def _expr_text(value) -> str:
    from .oqsl2 import OqElement, key_to_word

    if isinstance(value, AlgebraElement):
        value = value.parent.pbw_to_word(value)
    if isinstance(value, OqElement):
        parts = []
        for k, c in sorted(value.terms.items()):
            body = "*".join(key_to_word(k)) or "1"
            parts.append(f"({format_scalar(c)})*{body}")
        return " + ".join(parts) or "0"
    if isinstance(value, WordElement):
        parts = []
        for w, c in sorted(value.terms.items(), key=lambda t: repr(t[0])):
            letters = []
            for a in w:
                letters.append("K[" + ",".join(map(str, a[1])) + "]" if a[0] == "K" else f"{a[0]}{a[1] + 1}")
            parts.append(f"({format_scalar(c)})*" + ("*".join(letters) or "1"))
        return " + ".join(parts) or "0"
    if isinstance(value, Fraction):
        return f"({format_scalar(value)})"
    raise ValueError(f"format 'expr' only applies to algebra elements, not {type(value).__name__}; use json, table or csv")


def emit(value, fmt: str = "json") -> str:
    """Canonical text for a value; equal values give byte-identical output."""
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool) and fmt != "expr":
        value = [{"r": [], "lambda": [], "s": [], "coeff": format_scalar(value)}]
    if fmt == "json":
        return json.dumps(_to_jsonable(value), sort_keys=True, indent=2)
    if fmt == "expr":
        return _expr_text(value)
    rows = _rows(value)
    cols: list = []
    for r in rows:
        for k in r:
            if k not in cols:
                cols.append(k)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow(r)
        return buf.getvalue().rstrip("\n")
    if fmt == "table":
        if not rows:
            return "(empty)"
        widths = {c: max(len(c), *(len(str(r.get(c, ""))) for r in rows)) for c in cols}
        lines = ["  ".join(c.ljust(widths[c]) for c in cols).rstrip(), "  ".join("-" * widths[c] for c in cols)]
        for r in rows:
            lines.append("  ".join(str(r.get(c, "")).ljust(widths[c]) for c in cols).rstrip())
        return "\n".join(lines)
    raise ValueError(f"unknown format {fmt!r}")


# -- verification runner ---------------------------------------------------------------


def run_verify(config: SessionConfig) -> Report:
    from .suites import SUITES

    config.validate()
    unknown = [s for s in config.suites if s not in SUITES]
    if unknown:
        raise ValueError(f"unknown suites {unknown}; available: {sorted(SUITES)}")
    header = {"root_system": f"{config.lie_type}{config.rank}", "p": config.p, "seed": config.seed,
              "suites": sorted(config.suites)}
    rep = Report("verify", header=header)
    if not config.suites:
        return rep
    qg = config.group()
    from .uqcore import ResourceCapExceeded

    for name in sorted(config.suites):
        try:
            sub = SUITES[name](qg, config)
        except ResourceCapExceeded as exc:
            rep.add(f"{name}/resource", {}, False, error=str(exc))
            continue
        for rec in sub.checks:
            rec = dict(rec)
            rec["check"] = f"{name}/{rec['check']}"
            rep.checks.append(rec)
    _save_cache(qg)
    return rep.sorted()


# -- argument handling -------------------------------------------------------------------


def _parse_type(text: str) -> tuple[str, int]:
    text = text.strip().upper()
    if len(text) < 2 or not text[1:].isdigit():
        raise argparse.ArgumentTypeError(f"root system like A2 or B2 expected, got {text!r}")
    return text[0], int(text[1:])


def _parse_ints(text: str) -> tuple:
    text = text.strip().strip("()[]")
    if not text:
        return ()
    return tuple(int(x) for x in text.replace(" ", ",").split(",") if x)


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file with SessionConfig fields")
    common.add_argument("--type", dest="root_type", type=_parse_type, help="root system, e.g. A2 (default A2)")
    common.add_argument("--p", type=int, help="residue prime (default 5)")
    common.add_argument("--qprime", help="value of q^(1/d) (default 1+p)")
    common.add_argument("--word", type=_parse_ints, help="reduced word for w0, e.g. 2,1,2")
    common.add_argument("--height-cap", type=int)
    common.add_argument("--depth-cap", type=int)
    common.add_argument("--format", choices=FORMATS)
    common.add_argument("--seed", type=int)
    common.add_argument("-v", "--verbose", action="store_true")

    ap = argparse.ArgumentParser(prog="uqpadic", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("normal-form", parents=[common], help="PBW normal form of an expression")
    p.add_argument("expression")
    p = sub.add_parser("norm", parents=[common], help="log_p of the gauge norm at level n")
    p.add_argument("expression")
    p.add_argument("-n", type=int, required=True)
    p = sub.add_parser("braid", parents=[common], help="apply T_w to an expression")
    p.add_argument("expression")
    p.add_argument("-w", "--braid-word", type=_parse_ints, required=True)
    p = sub.add_parser("verma", parents=[common], help="weight multiplicities and maximal vectors of M(lambda)")
    p.add_argument("--lambda", dest="lam", type=_parse_ints, required=True)
    p.add_argument("--depth", type=int, default=4)
    p = sub.add_parser("blocks", parents=[common], help="dot-orbit blocks on a weight grid")
    p.add_argument("--grid", type=int, default=3)
    p = sub.add_parser("casimir", parents=[common], help="the sl2 Casimir element and its center checks")
    p.add_argument("--n-max", type=int)
    p.add_argument("--deg-max", type=int, default=3)
    p = sub.add_parser("oq", parents=[common], help="O_q(SL2): normal form, norm, Hopf maps")
    p.add_argument("expression")
    p.add_argument("-n", type=int, help="also report the log-norm at level n")
    p.add_argument("--hopf", action="store_true", help="also print coproduct, counit and antipode")
    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("--suite", type=lambda s: [x for x in s.split(",") if x], default=None,
                   help="comma separated: serre,braid,pbw-lattice,hopf,norms,verma,blocks,casimir,oq")
    sub.add_parser("rootdata", parents=[common], help="root system data as JSON")
    return ap


def _config_from_args(args) -> SessionConfig:
    cfg = SessionConfig.from_file(args.config) if args.config else SessionConfig()
    if args.root_type:
        cfg.lie_type, cfg.rank = args.root_type
    for name in ("p", "qprime", "word", "height_cap", "depth_cap", "format", "seed"):
        v = getattr(args, name, None)
        if v is not None:
            setattr(cfg, name, v)
    if getattr(args, "suite", None) is not None:
        cfg.suites = args.suite
    return cfg.validate()


def _cmd_rootdata(cfg, args):
    rs = cfg.root_system()
    qg = cfg.group()
    out = rs.to_json()
    out["word"] = list(qg.word)
    out["beta_sequence"] = [{"beta": list(b), "height": h} for b, h in beta_sequence(rs, qg.word)]
    out["root_vectors"] = [emit_word_json(qg, j) for j in range(qg.N)]
    return out


def emit_word_json(qg: QuantumGroup, j: int) -> list:
    return [{"word": [f"E{i + 1}" for i in w], "coeff": format_scalar(c)}
            for w, c in sorted(qg.root_vector_eword(j).items())]


def _parse_for(cfg, qg, text):
    return parse_expression(text, qg.n, qg.spec)


def _cmd_normal_form(cfg, args):
    from .oqsl2 import OqElement

    qg = cfg.group()
    x = _parse_for(cfg, qg, args.expression)
    if isinstance(x, OqElement):
        return x
    return qg.word_to_pbw(x)


def _cmd_norm(cfg, args):
    from .lattice import in_lattice, log_norm

    qg = cfg.group()
    x = qg.word_to_pbw(_parse_for(cfg, qg, args.expression))
    ln = log_norm(x, args.n)
    return {"n": args.n, "log_norm": ln if ln != float("-inf") else "-inf", "in_lattice": in_lattice(x, args.n)}


def _cmd_braid(cfg, args):
    from .braid import braid_Tw

    qg = cfg.group()
    x = qg.word_to_pbw(_parse_for(cfg, qg, args.expression))
    return braid_Tw(args.braid_word, x)


def _cmd_verma(cfg, args):
    import itertools

    from .category_o import irreducibility_witness_depth, kostant, maximal_vectors, verma_irreducible

    qg = cfg.group()
    rs = qg.rs
    lam = tuple(args.lam)
    if len(lam) != rs.rank:
        raise ValueError(f"lambda needs {rs.rank} coordinates")
    depth = min(args.depth, cfg.depth_cap)
    found = []
    for nu in itertools.product(range(depth + 1), repeat=rs.rank):
        if sum(nu) > depth:
            continue
        mu = tuple(a - b for a, b in zip(lam, rs.root_to_weight(nu)))
        found.append((mu, nu, len(maximal_vectors(qg, lam, mu))))
    rows = [{"mu": " ".join(map(str, mu)), "depth": sum(nu), "dim": kostant(rs, nu), "maximal_vectors": k}
            for mu, nu, k in sorted(found, reverse=True)]
    if cfg.format in ("csv", "table"):
        return rows
    irr = verma_irreducible(qg, lam, depth)
    return {"lambda": list(lam), "weights": rows, "irreducible_at_depth": irr.at_depth,
            "criterion": irr.criterion, "witness_depth": irreducibility_witness_depth(rs, lam)}


def _cmd_blocks(cfg, args):
    import itertools

    from .rootdata import dominant_representative

    rs = cfg.root_system()
    blocks: dict = {}
    for lam in itertools.product(range(-args.grid, args.grid + 1), repeat=rs.rank):
        blocks.setdefault(dominant_representative(rs, lam)[0], []).append(lam)
    rows = [{"representative": " ".join(map(str, k)), "size": len(v),
             "members": ";".join(" ".join(map(str, m)) for m in sorted(v))} for k, v in sorted(blocks.items())]
    return rows


def _cmd_casimir(cfg, args):
    from .category_o import casimir_sl2, verify_sl2_center

    spec = QSpec(cfg.p, 2, Fraction(cfg.qprime) if cfg.qprime else None)
    rep = verify_sl2_center(spec, args.n_max, args.deg_max, seed=cfg.seed)
    if cfg.format == "json":
        return {"casimir": _to_jsonable(casimir_sl2(spec)), "report": rep.to_json()}
    return rep


def _cmd_oq(cfg, args):
    from .oqsl2 import OqElement, OqSL2

    ring = OqSL2(QSpec(cfg.p, 2, Fraction(cfg.qprime) if cfg.qprime else None))
    x = parse_expression(args.expression, None, ring.spec, oq_ring=ring)
    if not isinstance(x, OqElement):
        raise ValueError("oq expressions use the letters a, b, c, d")
    if args.n is None and not args.hopf:
        return x
    out = {"normal_form": _to_jsonable(x)}
    if args.n is not None:
        ln = ring.log_norm(x, args.n)
        out["log_norm"] = ln if ln != float("-inf") else "-inf"
    if args.hopf:
        out["coproduct"] = _to_jsonable(ring.coproduct(x))
        out["counit"] = format_scalar(ring.counit(x))
        out["antipode"] = _to_jsonable(ring.antipode(x))
    return out


_COMMANDS = {
    "normal-form": _cmd_normal_form,
    "norm": _cmd_norm,
    "braid": _cmd_braid,
    "verma": _cmd_verma,
    "blocks": _cmd_blocks,
    "casimir": _cmd_casimir,
    "oq": _cmd_oq,
    "rootdata": _cmd_rootdata,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = _config_from_args(args)
        if args.command == "verify":
            rep = run_verify(cfg)
            print(emit(rep, cfg.format))
            return 0 if rep.passed else 1
        value = _COMMANDS[args.command](cfg, args)
        print(emit(value, cfg.format))
        return 0
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
