"""Acceptance criteria, one test each; every test records a PASS/FAIL line.

Runnable directly as well: ``python tests/test_acceptance.py [1 2 ...]``.
"""

import dataclasses
import itertools
import sys
import time
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from conftest import ACCEPTANCE_LINES  # noqa: E402
from oracles_closed_form import heis_conj, heis_inv, heis_mul, ut3_conj, ut3_inv, ut3_mul  # noqa: E402
from oracles_smallcanc import brute_force_lambda  # noqa: E402
from pcw import smallcanc as sc  # noqa: E402
from pcw.attacks import field_based_attack  # noqa: E402
from pcw.bench import ExperimentConfig, ExperimentReport, bench_collection, bench_csp, lba_campaign  # noqa: E402
from pcw.core import conjugate, inv, mul  # noqa: E402
from pcw.errors import InsufficientShares, SingularSystem  # noqa: E402
from pcw.oracles import SearchBudget, inner_automorphism  # noqa: E402
from pcw.platform import by_name  # noqa: E402
from pcw.protocols import (  # noqa: E402
    AagParams,
    aag_run,
    elgamal_csp,
    elgamal_power,
    kolee_run,
    sig_keygen,
    sig_sign,
    sig_verify,
    ss_deal_nn,
    ss_deal_tn,
    ss_reconstruct_nn,
    ss_reconstruct_tn,
    twisted_auth_session,
    twisted_keygen,
)
from pcw.protocols.elgamal import elgamal_decrypt  # noqa: E402
from pcw.protocols.kolee import kolee_finish  # noqa: E402
from pcw.protocols.sharing import SmallCancConfig, poly_eval, split_xor  # noqa: E402
from pcw.protocols.twisted import heisenberg_automorphism  # noqa: E402
from pcw.rng import Rng  # noqa: E402


def record(number, title, ok, detail, elapsed, limit):
    ok = ok and elapsed < limit
    line = f"criterion {number} {'PASS' if ok else 'FAIL'}: {title}: {detail} ({elapsed:.1f} s, limit {limit} s)"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


# ------------------------------------------------------------------ 1


def criterion_1():
    t0 = time.perf_counter()
    rng = Rng(1)
    checked = bad = 0
    for name, ops in [("heisenberg", (heis_mul, heis_inv, heis_conj)), ("ut:3", (ut3_mul, ut3_inv, ut3_conj))]:
        p = by_name(name).presentation
        f_mul, f_inv, f_conj = ops
        for _ in range(1000):
            x = tuple(rng.randint(-50, 50) for _ in range(3))
            y = tuple(rng.randint(-50, 50) for _ in range(3))
            X, Y = p.element(x), p.element(y)
            bad += mul(X, Y).exps != f_mul(x, y)
            bad += inv(X).exps != f_inv(x)
            bad += conjugate(X, Y).exps != f_conj(x, y)
            checked += 3
    return record(1, "normal forms match closed forms", bad == 0,
                  f"{checked - bad}/{checked} exact on heisenberg and ut:3", time.perf_counter() - t0, 10)


def test_criterion_1_closed_forms():
    assert criterion_1()


# ------------------------------------------------------------------ 2


def criterion_2():
    t0 = time.perf_counter()
    parts, ok = [], True
    for name in ("heisenberg", "ut:4", "zsqrt2"):
        pg = by_name(name)
        good = sum(
            mul(t.key_alice, t.key_bob).is_identity()
            for t in (aag_run(pg, AagParams(5, 5, 2, 4, 5), Rng(seed)) for seed in range(100))
        )
        ok &= good == 100
        parts.append(f"{name} {good}/100")
    return record(2, "AAG key agreement", ok, ", ".join(parts), time.perf_counter() - t0, 60)


def test_criterion_2_aag_agreement():
    assert criterion_2()


# ------------------------------------------------------------------ 3


def _kolee():
    hh = by_name("heisenberg*heisenberg")
    honest = neg = 0
    for seed in range(100):
        t = kolee_run(hh, Rng(seed))
        honest += t.agreed()
        neg += not kolee_finish(t, mul(t.g_a, hh.presentation.gen(1)), t.g_b).agreed()
    return honest, neg


def _elgamal_csp():
    hh = by_name("heisenberg*heisenberg")
    honest = neg = 0
    for seed in range(100):
        tr = elgamal_csp(hh, [1, 2, 3], [4, 5, 6], Rng(seed))
        honest += tr.ok()
        neg += elgamal_decrypt(tr.s, tr.h, mul(tr.E, hh.presentation.gen(1))) != tr.x
    return honest, neg


def _elgamal_power():
    heis = by_name("heisenberg")
    honest = 0
    for seed in range(100):
        tr = elgamal_power(heis, [3], [1, 2], Rng(seed), budget=SearchBudget(100_000, 4))
        honest += tr.identity_holds() and tr.ok()
    return honest, None


def _signature():
    pg = by_name("zsqrt2")
    honest = neg = 0
    for seed in range(100):
        kp = sig_keygen(pg, Rng(seed))
        msg = f"message {seed}".encode()
        sig = sig_sign(kp, msg, Rng(seed).spawn("sign"))
        honest += sig_verify(kp.x, msg, sig)
        flipped = bytes([msg[0] ^ 1]) + msg[1:]
        forged = type(sig)(mul(sig.y, pg.presentation.gen(3)), sig.alpha, sig.n_j)
        neg += not sig_verify(kp.x, flipped, sig) and not sig_verify(kp.x, msg, forged)
    return honest, neg


def _twisted():
    heis = by_name("heisenberg")
    p = heis.presentation
    phi = heisenberg_automorphism(heis, ((2, 1), (1, 1)))
    psi = inner_automorphism(p, p.element((0, 1, 0)))
    honest = neg = 0
    for seed in range(100):
        key = twisted_keygen(heis, phi, psi, Rng(seed))
        honest += twisted_auth_session(heis, key, 20, Rng(seed).spawn("auth")).accepted
        neg += not twisted_auth_session(heis, key, 20, Rng(seed).spawn("cheat"), cheat=True).accepted
    return honest, neg


def _sharing_nn():
    cfg = SmallCancConfig()
    honest = neg = 0
    for seed in range(100):
        rng = Rng(seed)
        secret = "".join(str(rng.getrandbits(1)) for _ in range(16))
        shares = ss_deal_nn(secret, 3, rng.spawn("deal"), cfg)
        honest += ss_reconstruct_nn(shares) == secret
        # swap one codeword for a codeword of the opposite bit
        first = shares[0]
        bit = first.decode()[0]
        swapped = sc.encode_bit(first.presentation, 1 - bit, rng.spawn("tamper"), cfg.max_conj)
        bad = dataclasses.replace(first, codewords=(swapped,) + first.codewords[1:])
        neg += ss_reconstruct_nn([bad] + shares[1:]) != secret
    return honest, neg


def _sharing_tn():
    cfg = SmallCancConfig()
    honest = neg = 0
    for seed in range(100):
        rng = Rng(seed)
        x = rng.randrange(257)
        shares = ss_deal_tn(x, 3, 5, 257, rng.spawn("deal"), cfg)
        subset = rng.sample(shares, 3)
        honest += ss_reconstruct_tn(subset) == x
        try:
            ss_reconstruct_tn(subset[:2])
        except InsufficientShares:
            neg += 1
    return honest, neg


def criterion_3():
    t0 = time.perf_counter()
    runs = [
        ("ko-lee", _kolee),
        ("elgamal-csp", _elgamal_csp),
        ("elgamal-power", _elgamal_power),
        ("signature", _signature),
        ("twisted k=20", _twisted),
        ("sharing (n,n)", _sharing_nn),
        ("sharing (t,n)", _sharing_tn),
    ]
    ok, parts = True, []
    for name, fn in runs:
        honest, neg = fn()
        ok &= honest == 100 and neg in (None, 100)
        parts.append(f"{name} {honest}/100" + ("" if neg is None else f" neg {neg}/100"))
    return record(3, "protocol round trips", ok, "; ".join(parts), time.perf_counter() - t0, 300)


def test_criterion_3_protocols():
    assert criterion_3()


# ------------------------------------------------------------------ 4

COLLECTION_GROUPS = ("heisenberg", "ut:4", "ut:6", "zsqrt2", "tri:4:2", "tri:12:3")


def criterion_4():
    t0 = time.perf_counter()
    coll = ExperimentReport(bench_collection(ExperimentConfig(groups=COLLECTION_GROUPS, trials=100, word_len=(1, 64), seed=4)))
    worst = max(coll.rows, key=lambda r: r.value if r.metric == "collect_mean" else -1)
    coll_ok = all(r.value < 50 for r in coll.rows if r.metric == "collect_mean")
    cfg = ExperimentConfig(groups=("zsqrt2", "tri:12:3"), trials=10, seed=4, conj_len=6, pairs=2, a_len=8,
                           max_nodes=100_000, max_radius=10)
    csp = ExperimentReport(bench_csp(cfg))
    solved3 = csp.get("zsqrt2", "csp_solved")
    exhausted15 = csp.get("tri12u3", "csp_exhausted")
    ok = coll_ok and solved3 >= 9 and exhausted15 >= 9
    detail = (f"collection worst mean {worst.value:.2f} ms ({worst.group}, H={worst.hirsch}); "
              f"CSP solved H=3 {solved3}/10, exhausted H=15 {exhausted15}/10")
    return record(4, "collection vs conjugacy trend", ok, detail, time.perf_counter() - t0, 600)


def test_criterion_4_trend():
    assert criterion_4()


# ------------------------------------------------------------------ 5

LBA_GROUPS = ("heisenberg", "ut:4", "ut:6")
LBA_THRESHOLD = 0.20


def criterion_5():
    t0 = time.perf_counter()
    cfg = ExperimentConfig(groups=LBA_GROUPS, trials=50, seed=1, aag=AagParams(5, 5, 2, 4, 4), memory=2,
                           max_iterations=10_000, time_limit=None)
    rep = ExperimentReport(lba_campaign(cfg))
    rates = {r.group: r.value for r in rep.rows if r.metric == "lba_success_rate"}
    unsound = sum(r.value for r in rep.rows if r.metric == "lba_unsound")
    gap = rates["heisenberg"] - rates["ut6"]
    ok = unsound == 0 and gap >= LBA_THRESHOLD
    detail = (", ".join(f"{g} {v:.2f}" for g, v in rates.items())
              + f"; gap H3-H15 {gap:.2f} (need {LBA_THRESHOLD}); unsound {unsound}")
    return record(5, "LBA soundness and trend", ok, detail, time.perf_counter() - t0, 1800)


def test_criterion_5_lba():
    assert criterion_5()


# ------------------------------------------------------------------ 6


def criterion_6():
    t0 = time.perf_counter()
    ok, parts = True, []
    for name in ("zsqrt2", "biquadratic"):
        pg = by_name(name)
        wins = singular = wrong = 0
        for seed in range(40):
            t = aag_run(pg, AagParams(5, 5, 2, 4, 4), Rng(seed))
            try:
                res = field_based_attack(t, pg)
            except SingularSystem:
                singular += 1
                continue
            if res.success and res.key == t.key:
                wins += 1
            else:
                wrong += 1
        ok &= wins >= 38 and wrong == 0
        parts.append(f"{name} (H={pg.hirsch}) {wins}/40, singular {singular}, wrong {wrong}")
    return record(6, "field-based attack", ok, "; ".join(parts), time.perf_counter() - t0, 600)


def test_criterion_6_field_attack():
    assert criterion_6()


# ------------------------------------------------------------------ 7


def _tn_open(p, t, known):
    """Every candidate secret fits some degree t-1 polynomial through ``known``."""
    for x in range(p):
        if t == 2:
            (j, y), = known
            fits = any(poly_eval([x, a], j, p) == y for a in range(p))
        else:
            (j1, y1), (j2, y2) = known
            fits = False
            for a1 in range(p):
                # solve a2 from the first point, check the second
                a2 = (y1 - x - a1 * j1) * pow(j1 * j1, -1, p) % p
                if poly_eval([x, a1, a2], j2, p) == y2:
                    fits = True
                    break
        if not fits:
            return False
    return True


def criterion_7():
    t0 = time.perf_counter()
    ok = True
    errors = metric_bad = 0
    cfg = SmallCancConfig()
    for seed in range(5):
        pres = sc.generate_relator_set(cfg.alphabet_size, cfg.relators, cfg.min_len, Rng(seed))
        metric_bad += pres.lam != brute_force_lambda(pres.relators) or pres.lam >= Fraction(1, 6)
        rng = Rng(seed).spawn("bits")
        for _ in range(1000):
            b = rng.getrandbits(1)
            errors += sc.decode_bit(pres, sc.encode_bit(pres, b, rng, cfg.max_conj)) != b
    ok &= errors == 0 and metric_bad == 0

    subsets_bad = 0
    for p, t, n, x in [(257, 3, 5, 42), (17, 2, 4, 9), (101, 3, 4, 0)]:
        shares = ss_deal_tn(x, t, n, p, Rng(9))
        for sub in itertools.combinations(shares, t):
            subsets_bad += ss_reconstruct_tn(list(sub)) != x
    ok &= subsets_bad == 0

    open_bad = 0
    for p, t in [(17, 2), (257, 2), (257, 3)]:
        rng = Rng(p * t)
        coeffs = [rng.randrange(p) for _ in range(t)]
        known = [(j, poly_eval(coeffs, j, p)) for j in range(1, t)]
        open_bad += not _tn_open(p, t, known)
    k, n = 8, 3
    secret = [1, 0, 1, 1, 0, 0, 1, 0]
    known = split_xor(secret, n, Rng(7))[:-1]
    reachable = set()
    for missing in itertools.product((0, 1), repeat=k):
        acc = list(missing)
        for part in known:
            acc = [a ^ b for a, b in zip(acc, part)]
        reachable.add(tuple(acc))
    open_bad += len(reachable) != 2**k
    ok &= open_bad == 0

    detail = (f"5 presentations x 1000 bits, {errors} decode errors, {metric_bad} metric mismatches; "
              f"{subsets_bad} bad t-subsets; {open_bad} threshold leaks")
    return record(7, "small cancellation engine and sharing", ok, detail, time.perf_counter() - t0, 300)


def test_criterion_7_smallcanc():
    assert criterion_7()


CRITERIA = {1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5, 6: criterion_6, 7: criterion_7}

if __name__ == "__main__":
    chosen = [int(a) for a in sys.argv[1:]] or sorted(CRITERIA)
    results = [CRITERIA[c]() for c in chosen]
    sys.exit(0 if all(results) else 1)
