"""Command line interface: ``pcw <command> ...``.

Global flags ``--seed``, ``--out`` and ``--format`` may appear before or
after the subcommand.  ``PCW_LOG`` sets the log level (e.g. ``info``).
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import os
import sys
from pathlib import Path

from . import bench
from . import platform as plat
from .attacks import LbaConfig, field_based_attack, lba
from .core import check_consistency, dump_presentation
from .core import words as W
from .core.presentation import GroupElement
from .errors import PcwError
from .oracles import SearchBudget, csp_enumerate
from .protocols import sharing
from .protocols import signature as sg
from .protocols.aag import AagParams, AagTranscript, aag_run
from .rng import Rng

log = logging.getLogger("pcw")


def _setup_logging():
    level = os.environ.get("PCW_LOG", "warning")
    level = int(level) if level.isdigit() else getattr(logging, level.upper(), logging.WARNING)
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")


def _emit(args, text: str):
    if args.out and args.out != "-":
        Path(args.out).write_text(text)
        log.info("wrote %s", args.out)
    else:
        sys.stdout.write(text)


def _dump(data) -> str:
    return json.dumps(data, indent=2) + "\n"


def _load_json(path):
    return json.loads(Path(path).read_text())


def _message(args) -> bytes:
    if args.message_file:
        return Path(args.message_file).read_bytes()
    if args.message is None:
        raise SystemExit("need --message or --message-file")
    return args.message.encode()


def _element(p, value) -> GroupElement:
    """Exponent list or a ``g<k>^<e>`` word string."""
    if isinstance(value, str):
        return p.word_element(W.from_str(value))
    return p.element(value)


# ------------------------------------------------------------------ group


def cmd_group(args):
    if args.action == "make":
        pg = plat.resolve(args.spec)
        _emit(args, dump_presentation(pg.presentation))
    elif args.action == "info":
        pg = plat.resolve(args.spec, check=False)
        verdict = check_consistency(pg.presentation, args.trials, Rng(args.seed))
        _emit(args, _dump({
            "name": pg.name,
            "ngens": pg.presentation.ngens,
            "hirsch": pg.hirsch,
            "consistency": verdict.label,
            "reason": verdict.reason,
            "matrix_dim": pg.matrix_image.dim if pg.matrix_image else None,
        }))
        return 0 if verdict.consistent else 1
    elif args.action == "rep":
        pg = plat.resolve(args.spec)
        if pg.matrix_image is None:
            raise PcwError(f"{pg.name} ships no matrix image")
        _emit(args, plat.dump_rep(pg.matrix_image))
    return 0


# ------------------------------------------------------------------ oracle


def cmd_oracle(args):
    pg = plat.resolve(args.group)
    p = pg.presentation
    if args.pairs:
        data = _load_json(args.pairs)
        pairs = [(_element(p, a), _element(p, b)) for a, b in data["pairs"]]
    else:
        cfg = bench.ExperimentConfig(conj_len=args.plant, pairs=args.npairs, a_len=args.a_len, seed=args.seed)
        _, pairs = bench.plant_csp(pg, cfg, Rng(args.seed))
    res = csp_enumerate(pg, pairs, SearchBudget(args.max_nodes, args.max_radius))
    out = res.to_json()
    out["pairs"] = [[list(a.exps), list(b.exps)] for a, b in pairs]
    _emit(args, _dump(out))
    return 0 if res.found else 3


# ------------------------------------------------------------------ aag


def cmd_aag(args):
    pg = plat.resolve(args.group)
    params = AagParams(args.N1, args.N2, args.L1, args.L2, args.L)
    t = aag_run(pg, params, Rng(args.seed))
    t.group_name = args.group
    prefix = args.out if args.out and args.out != "-" else "transcript"
    pub, priv = Path(f"{prefix}.public.json"), Path(f"{prefix}.private.json")
    pub.write_text(_dump(t.public()))
    priv.write_text(_dump(t.private()))
    print(f"{pub}\n{priv}")
    return 0


def _load_transcript(path, group=None):
    data = _load_json(path)
    pg = plat.resolve(group or data["group"])
    return pg, AagTranscript.from_public(data, pg)


# ------------------------------------------------------------------ signatures


def cmd_sign(args):
    if args.action == "keygen":
        pg = plat.resolve(args.group)
        kp = sg.sig_keygen(pg, Rng(args.seed))
        _emit(args, _dump(sg.keypair_to_json(kp, args.group)))
        if args.public:
            Path(args.public).write_text(_dump(sg.public_to_json(kp, args.group)))
        return 0
    data = _load_json(args.key)
    pg = plat.resolve(data["group"])
    kp = sg.keypair_from_json(data, pg.presentation)
    sig = sg.sig_sign(kp, _message(args), Rng(args.seed))
    # persist the used factor so later signatures never reuse it
    Path(args.key).write_text(_dump(sg.keypair_to_json(kp, data["group"])))
    _emit(args, _dump(sg.signature_to_json(sig)))
    return 0


def cmd_verify(args):
    pub = _load_json(args.public)
    pg = plat.resolve(pub["group"])
    x = sg.public_from_json(pub, pg.presentation)
    sig = sg.signature_from_json(_load_json(args.signature), pg.presentation)
    ok = sg.sig_verify(x, _message(args), sig)
    _emit(args, "accept\n" if ok else "reject\n")
    return 0 if ok else 1


# ------------------------------------------------------------------ sharing


def cmd_share(args):
    if args.action == "deal":
        rng = Rng(args.seed)
        if args.scheme == "nn":
            shares = sharing.ss_deal_nn(args.secret, args.n, rng)
        else:
            shares = sharing.ss_deal_tn(int(args.secret), args.t, args.n, args.p, rng)
        outdir = Path(args.out if args.out and args.out != "-" else "shares")
        outdir.mkdir(parents=True, exist_ok=True)
        for s in shares:
            path = outdir / f"share_{s.index}.json"
            path.write_text(s.dumps())
            print(path)
        return 0
    bundles = [sharing.ShareBundle.from_json(_load_json(f)) for f in args.files]
    if bundles and bundles[0].scheme == "tn":
        secret = str(sharing.ss_reconstruct_tn(bundles))
    else:
        secret = sharing.ss_reconstruct_nn(bundles)
    _emit(args, secret + "\n")
    return 0


# ------------------------------------------------------------------ attacks


def cmd_attack(args):
    pg, t = _load_transcript(args.transcript, args.group)
    if args.action == "lba":
        cfg = LbaConfig(args.memory, args.max_iter, args.time_budget, args.side)
        res = lba(t, cfg)
    else:
        if args.rep:
            pg = dataclasses.replace(pg, matrix_image=plat.parse_rep(Path(args.rep).read_text(), pg.presentation))
        res = field_based_attack(t, pg)
    _emit(args, _dump(res.to_json()))
    return 0 if res.success else 2


# ------------------------------------------------------------------ bench


def cmd_bench(args):
    cfg = bench.ExperimentConfig(
        groups=tuple(args.groups.split(",")),
        trials=args.trials,
        word_len=(args.min_len, args.max_len),
        seed=args.seed,
        conj_len=args.conj_len,
        pairs=args.npairs,
        max_nodes=args.max_nodes,
        memory=args.memory,
        max_iterations=args.max_iter,
    )
    report = bench.ExperimentReport(seed=args.seed, environment=bench.environment())
    kinds = ["collection", "csp", "lba"] if args.kind == "all" else [args.kind]
    runners = {"collection": bench.bench_collection, "csp": bench.bench_csp, "lba": bench.lba_campaign}
    for kind in kinds:
        report.extend(runners[kind](cfg))
    fmt = args.format if args.format in ("csv", "json") else "csv"
    _emit(args, bench.emit_report(report, fmt, zero_timing=args.zero_timing))
    return 0


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="RNG seed (default 0)")
    common.add_argument("--out", default=argparse.SUPPRESS, help="output path or prefix (default stdout)")
    common.add_argument("--format", choices=["json", "csv", "text"], default=argparse.SUPPRESS)

    ap = argparse.ArgumentParser(prog="pcw", description="Polycyclic group cryptography workbench", parents=[common])
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("group", parents=[common], help="build and inspect presentations")
    g.add_argument("action", choices=["make", "info", "rep"])
    g.add_argument("spec", help="heisenberg | ut:<n> | semidirect:<file> | product:<a>,<b> | name | file")
    g.add_argument("--trials", type=int, default=100)
    g.set_defaults(func=cmd_group)

    o = sub.add_parser("oracle", parents=[common], help="search oracles")
    o.add_argument("kind", choices=["csp"])
    o.add_argument("--group", required=True)
    o.add_argument("--pairs", help="JSON file {\"pairs\": [[a, b], ...]}; planted instance if omitted")
    o.add_argument("--max-radius", type=int, default=10)
    o.add_argument("--max-nodes", type=int, default=100_000)
    o.add_argument("--plant", type=int, default=2, help="planted conjugator length")
    o.add_argument("--npairs", type=int, default=2)
    o.add_argument("--a-len", type=int, default=8)
    o.set_defaults(func=cmd_oracle)

    a = sub.add_parser("aag", parents=[common], help="commutator key exchange")
    a.add_argument("action", choices=["run"])
    a.add_argument("--group", required=True)
    for name, default in (("N1", 5), ("N2", 5), ("L1", 2), ("L2", 4), ("L", 4)):
        a.add_argument(f"--{name}", type=int, default=default)
    a.set_defaults(func=cmd_aag)

    s = sub.add_parser("sign", parents=[common], help="signature keygen and signing")
    s.add_argument("action", choices=["keygen", "message"])
    s.add_argument("--group", default="tri:2:1")
    s.add_argument("--public", help="keygen: also write the public key here")
    s.add_argument("--key", help="message: private key file (updated in place)")
    s.add_argument("--message")
    s.add_argument("--message-file")
    s.set_defaults(func=cmd_sign)

    v = sub.add_parser("verify", parents=[common], help="verify a signature")
    v.add_argument("--public", required=True)
    v.add_argument("--signature", required=True)
    v.add_argument("--message")
    v.add_argument("--message-file")
    v.set_defaults(func=cmd_verify)

    sh = sub.add_parser("share", parents=[common], help="secret sharing")
    sh.add_argument("action", choices=["deal", "reconstruct"])
    sh.add_argument("files", nargs="*")
    sh.add_argument("--scheme", choices=["nn", "tn"], default="nn")
    sh.add_argument("--secret", help="bit string (nn) or integer mod p (tn)")
    sh.add_argument("--n", type=int, default=3)
    sh.add_argument("--t", type=int, default=2)
    sh.add_argument("--p", type=int, default=257)
    sh.set_defaults(func=cmd_share)

    at = sub.add_parser("attack", parents=[common], help="attacks on AAG transcripts")
    at.add_argument("action", choices=["lba", "field"])
    at.add_argument("--transcript", required=True, help="public transcript JSON")
    at.add_argument("--group", help="override the transcript's group")
    at.add_argument("--memory", type=int, default=2)
    at.add_argument("--max-iter", type=int, default=100_000)
    at.add_argument("--time-budget", type=float)
    at.add_argument("--side", choices=["alice", "bob"], default="alice")
    at.add_argument("--rep", help="matrix image file for the field attack")
    at.set_defaults(func=cmd_attack)

    b = sub.add_parser("bench", parents=[common], help="experiments")
    b.add_argument("kind", choices=["collection", "csp", "lba", "all"])
    b.add_argument("--groups", default="heisenberg,ut:4,ut:6")
    b.add_argument("--trials", type=int, default=100)
    b.add_argument("--min-len", type=int, default=1)
    b.add_argument("--max-len", type=int, default=64)
    b.add_argument("--conj-len", type=int, default=6)
    b.add_argument("--npairs", type=int, default=2)
    b.add_argument("--max-nodes", type=int, default=100_000)
    b.add_argument("--memory", type=int, default=2)
    b.add_argument("--max-iter", type=int, default=10_000)
    b.add_argument("--zero-timing", action="store_true", help="zero wall-clock fields")
    b.add_argument("--sequential", action="store_true", help="trials always run sequentially; kept for scripts")
    b.set_defaults(func=cmd_bench)
    return ap


def main(argv=None) -> int:
    _setup_logging()
    args = build_parser().parse_args(argv)
    for name, default in (("seed", 0), ("out", None), ("format", None)):
        if not hasattr(args, name):
            setattr(args, name, default)
    try:
        return args.func(args)
    except PcwError as exc:
        print(f"pcw: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
