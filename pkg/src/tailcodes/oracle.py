"""Brute-force verification of the codes and of the lemmas behind them.

The lemma suites recompute everything they check from first principles
(Lehmer counts, ascent bits, parities, digit counts) and never go through a
production decoder.  Failures are returned as data with enough detail to
replay them.
"""

from __future__ import annotations

import itertools
import json
import time
from collections import Counter
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable, Iterator, Optional, Sequence

from .channel import Pattern, enumerate_patterns, inject, inject_b, inject_c, pattern_to_dict
from .code_a import estimate_sigma_hat
from .code_b import CodeParamsB, declare_erasures, encode_b
from .code_c import candidate_reconstructions, checksum_position, parity_moduli
from .codec import Codec, sample_permutation
from .errors import DecodeError
from .perm import factorial_pack, factorial_unpack, inverse

Word = tuple[int, ...]
LEMMAS = ("L1", "L2", "L3", "L4", "L6", "L7", "P1", "P2")


@dataclass
class VerificationReport:
    kind: str
    params: dict
    cases_tested: int = 0
    failures: list = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def verified(self) -> bool:
        return not self.failures

    def to_dict(self, with_elapsed: bool = True) -> dict:
        d = asdict(self)
        d["verified"] = self.verified
        if not with_elapsed:
            del d["elapsed"]
        return d

    def to_json(self, with_elapsed: bool = True) -> str:
        return json.dumps(self.to_dict(with_elapsed), separators=(",", ":"), sort_keys=True)

    def summary(self) -> str:
        status = "PASS" if self.verified else "FAIL"
        return (f"{status} {self.kind} {json.dumps(self.params, sort_keys=True)} "
                f"cases={self.cases_tested} failures={len(self.failures)} "
                f"elapsed={self.elapsed:.2f}s")


def permutations_in_scope(n: int, samples: Optional[int], seed: int) -> Iterator[Word]:
    """All of S_n when ``samples`` is None, else that many seeded draws."""
    if samples is None:
        yield from itertools.permutations(range(1, n + 1))
    else:
        for k in range(samples):
            yield sample_permutation(n, seed, k)


def _scope(samples: Optional[int], seed: int) -> dict:
    return {"scope": "exhaustive"} if samples is None else {"scope": "sampled", "samples": samples, "seed": seed}


def _record(perm, pattern: Optional[Pattern], got, **extra) -> dict:
    out = {"perm": list(perm)}
    if pattern is not None:
        out["pattern"] = pattern_to_dict(pattern)
    if isinstance(got, str):
        out["decoded"] = {"error": got}
    elif got is not None:
        out["decoded"] = list(got)
    out.update(extra)
    return out


def _timed(kind: str, params: dict, body: Callable[[VerificationReport], None]) -> VerificationReport:
    report = VerificationReport(kind, params)
    start = time.perf_counter()
    body(report)
    report.elapsed = time.perf_counter() - start
    return report


# ---------------------------------------------------------------- round trips


def exhaustive_verify(codec: Codec, samples: Optional[int] = None, seed: int = 0,
                      max_failures: int = 100) -> VerificationReport:
    """decode(inject(encode(sigma), p)) == sigma for every sigma in scope and every pattern p."""
    params = {**codec.descriptor(), **_scope(samples, seed)}

    def body(report):
        failed = 0
        for sigma in permutations_in_scope(codec.n, samples, seed):
            word = codec.encode(sigma)
            for pattern in enumerate_patterns(codec.model, word, codec.t, codec.m):
                report.cases_tested += 1
                try:
                    got = codec.decode(inject(word, pattern))
                except DecodeError as e:
                    got = e.reason
                if got != sigma:
                    failed += 1
                    if len(report.failures) < max_failures:
                        report.failures.append(_record(sigma, pattern, got))
        if failed > len(report.failures):
            report.params["failures_total"] = failed

    return _timed("verify", params, body)


def ambiguity_scan(codec: Codec, samples: Optional[int] = None, seed: int = 0) -> VerificationReport:
    """Corrupted words reachable from two different codewords.

    Any such collision defeats every decoder, so each one is a failure.
    """
    params = {**codec.descriptor(), **_scope(samples, seed)}

    def body(report):
        owner: dict[Word, Word] = {}
        flagged = set()
        for sigma in permutations_in_scope(codec.n, samples, seed):
            word = codec.encode(sigma)
            for pattern in enumerate_patterns(codec.model, word, codec.t, codec.m):
                report.cases_tested += 1
                seen = inject(word, pattern)
                first = owner.setdefault(seen, sigma)
                if first != sigma and seen not in flagged:
                    flagged.add(seen)
                    report.failures.append({"word": list(seen), "perms": [list(first), list(sigma)]})

    return _timed("ambiguity", params, body)


# ---------------------------------------------------------------- helpers


def _lehmer(word: Sequence[int]) -> list[int]:
    return [sum(1 for j in range(i) if word[j] > word[i]) for i in range(len(word))]


def _ascent(word: Sequence[int]) -> list[int]:
    return [1] + [1 if word[i] > word[i - 1] else 0 for i in range(1, len(word))]


def _inverse(perm: Sequence[int]) -> list[int]:
    out = [0] * len(perm)
    for pos, v in enumerate(perm, start=1):
        out[v - 1] = pos
    return out


def _parities(perm: Sequence[int], t: int) -> tuple[int, int, int, int]:
    inv = _inverse(perm)
    b = _ascent(inv)
    m1, m2, m3, m4 = parity_moduli(t)
    return (sum(b) % m1,
            sum(j * bit for j, bit in enumerate(b, start=1)) % m2,
            sum(j * (j + 1) // 2 * bit for j, bit in enumerate(b, start=1)) % m3,
            sum(_lehmer(inv)) % m4)


def _stuck_runs(values: Iterable[int]) -> list[list[int]]:
    runs: list[list[int]] = []
    for v in sorted(values):
        if runs and runs[-1][-1] == v - 1:
            runs[-1].append(v)
        else:
            runs.append([v])
    return runs


# ---------------------------------------------------------------- lemmas


def _lemma1(report, n, t, m, samples, seed):
    """A set of isolated one-step drops lowers exactly the later copy's Lehmer count."""
    for sigma in permutations_in_scope(n, samples, seed):
        lehmer = _lehmer(sigma)
        eligible = [p for p in range(n) if sigma[p] > max(m, 1)]
        for size in range(1, t + 1):
            for combo in itertools.combinations(eligible, size):
                vals = sorted(sigma[p] for p in combo)
                if any(b - a < 2 for a, b in zip(vals, vals[1:])):
                    continue
                err = list(sigma)
                for p in combo:
                    err[p] -= 1
                where = {v: p for p, v in enumerate(sigma)}
                expect = list(lehmer)
                for p in combo:
                    partner = where[sigma[p] - 1]
                    if partner > p:
                        expect[partner] -= 1
                report.cases_tested += 1
                if _lehmer(err) != expect:
                    report.failures.append(_record(sigma, None, None, positions=[p + 1 for p in combo]))


def _lemma2(report, n, t, m, samples, seed):
    """The estimate keeps exactly one drop per run of stuck values, at the run's bottom."""
    for sigma in permutations_in_scope(n, samples, seed):
        for pattern in enumerate_patterns("A", sigma, t, m, min_errors=1):
            stuck = {sigma[p - 1] for p in pattern.positions}
            bottoms = {run[0] for run in _stuck_runs(stuck)}
            expect = tuple(v - 1 if v in bottoms else v for v in sigma)
            report.cases_tested += 1
            try:
                got = estimate_sigma_hat(inject(sigma, pattern))
            except DecodeError as e:
                got = e.reason
            if got != expect:
                report.failures.append(_record(sigma, pattern, got))


def _blocks_hit(ranks: Iterable[int], t: int, start: int) -> set[int]:
    return {(r - start) // (2 * t) for r in ranks if r >= start}


def _one_block(ranks: Sequence[int], t: int, start: int) -> bool:
    return all(r >= start for r in ranks) and len(_blocks_hit(ranks, t, start)) <= 1


def _lemma3(report, n, t, m, samples, seed):
    """After a burst, one split has at most one block with a missing value.

    The decoder needs slightly more, since the repeated value's position is
    ambiguous too: some split must hold missing and repeated values in one block.
    """
    for sigma in permutations_in_scope(n, samples, seed):
        for pattern in enumerate_patterns("B", sigma, t, m, min_errors=1):
            word = inject_b(sigma, pattern)
            present = Counter(word)
            missing = [v for v in range(1, n + 1) if v not in present]
            unresolved = missing + [v for v, c in present.items() if c > 1]
            flagged = [sorted(_blocks_hit(missing, t, s)) for s in (1, t + 1)]
            report.cases_tested += 1
            ok = (min(len(f) for f in flagged) <= 1
                  and any(_one_block(unresolved, t, s) for s in (1, t + 1))
                  and flagged == [list(d) for d in declare_erasures(word, t)])
            if not ok:
                report.failures.append(_record(sigma, pattern, None))


def _lemma4(report, n, t, m, samples, seed):
    """A disturbed redundancy value is placed by the mod-n checksum on the digit counts.

    Checks the congruence a_s1 - a_s2 = j_s1 - j_s2 (mod n) for every pair of
    candidate positions, and that exactly one candidate sums to 0.
    """
    params = CodeParamsB(n, t)
    red = params.redundancy_values
    for sigma in permutations_in_scope(n, samples, seed):
        word = encode_b(sigma, params)
        for pattern in enumerate_patterns("B", word, t, m, min_errors=2):
            seen = inject_b(word, pattern)
            burst = set(range(pattern.j, pattern.j + pattern.t1))
            disturbed = [r for r in red if r in burst]
            if not disturbed:
                continue
            report.cases_tested += 1
            others = [seen.index(r) for r in red if r not in burst]
            candidates = [p for p, v in enumerate(seen) if v == pattern.j]
            sums = []
            for c in candidates:
                slots = set(others) | {c}
                sums.append(sum(sum(1 for q in range(p) if q not in slots) for p in slots) % n)
            congruent = all((sums[x] - sums[y] - (candidates[x] - candidates[y])) % n == 0
                            for x in range(len(sums)) for y in range(len(sums)))
            zeros = [c for c, s in zip(candidates, sums) if s == 0]
            if not congruent or len(zeros) != 1:
                report.failures.append(_record(sigma, pattern, None, candidates=[c + 1 for c in candidates],
                                               sums=sums, congruent=congruent))


def _lemma6(report, n, t, m, samples, seed):
    """Exactly one repair of a single model-C error carries the true parities."""
    for sigma in permutations_in_scope(n, samples, seed):
        target = _parities(sigma, t)
        for pattern in enumerate_patterns("C", sigma, t, m):
            word = inject_c(sigma, pattern)
            a = next(v for v, c in Counter(word).items() if c > 1)
            pair = [p for p, v in enumerate(word) if v == a]
            repairs = set()
            for x in pair:
                for drop in range(1, t + 1):
                    v = a + drop
                    if v > n:
                        break
                    cand = tuple(v if p == x else (w + 1 if w >= v else w) for p, w in enumerate(word))
                    repairs.add(cand)
            matching = [c for c in repairs if _parities(c, t) == target]
            listed = {tuple(inverse(c.inverse)) for c in
                      candidate_reconstructions(inverse(word), t, tuple(p + 1 for p in pair))}
            report.cases_tested += 1
            if matching != [sigma] or listed != repairs:
                report.failures.append(_record(sigma, pattern, None,
                                               matching=[list(c) for c in matching]))


def _lemma7(report, n, t, m, samples, seed):
    """A checksum slot exists for every layout of up to five redundancy symbols."""
    for tp in range(0, 6):
        size = n + tp
        for slots in itertools.combinations(range(1, size + 1), tp):
            values = iter(range(n + 1, n + tp + 1))
            data = iter(range(1, n + 1))
            perm = [next(values) if p in slots else next(data) for p in range(1, size + 1)]
            totals = []
            for q in range(1, size + 2):
                totals.append(q + sum(p + (p >= q) for p in slots))
            steps = {b - a for a, b in zip(totals, totals[1:])}
            q = checksum_position(perm, n)
            report.cases_tested += 1
            if not steps <= {0, 1} or totals[q - 1] % (n + 1) or not any(s % (n + 1) == 0 for s in totals):
                report.failures.append({"perm": perm, "t_prime": tp, "slot": q})


def _prop1(report, n, t, m, samples, seed):
    """A deletion or substitution in a word moves its ascent vector only in the listed ways."""
    for word in permutations_in_scope(n, samples, seed):
        b = _ascent(word)
        for i in range(n):
            report.cases_tested += 1
            shorter = _ascent(word[:i] + word[i + 1:]) if n > 1 else []
            options = [b[:k] + b[k + 1:] for k in (i, i + 1) if k < n]
            if shorter not in options:
                report.failures.append({"perm": list(word), "deleted": i + 1})
            for x in range(0, n + 2):
                if x == word[i]:
                    continue
                report.cases_tested += 1
                changed = _ascent(word[:i] + (x,) + word[i + 1:])
                diff = [k for k in range(n) if changed[k] != b[k]]
                ok = (not diff or len(diff) == 1 and diff[0] in (i, i + 1)
                      or diff == [i, i + 1] and b[i] != b[i + 1])
                if not ok:
                    report.failures.append({"perm": list(word), "substituted": i + 1, "value": x})


def _prop2(report, n, t, m, samples, seed):
    """factorial_pack lists the t-arrangements of 1..s in lexicographic order and inverts."""
    s = n
    for index, expect in enumerate(itertools.permutations(range(1, s + 1), t)):
        report.cases_tested += 1
        got = factorial_pack(index, s, t)
        if got != expect or factorial_unpack(got, s) != index:
            report.failures.append({"index": index, "expected": list(expect), "got": list(got)})


_SUITES = {"L1": _lemma1, "L2": _lemma2, "L3": _lemma3, "L4": _lemma4,
           "L6": _lemma6, "L7": _lemma7, "P1": _prop1, "P2": _prop2}


def lemma_suite(lemma: str, n: int, t: int, m: int = 0, samples: Optional[int] = None,
                seed: int = 0, max_failures: int = 100) -> VerificationReport:
    """Check one lemma-level law by direct enumeration.

    ``n`` is the permutation length (for P2 the alphabet size ``s``).
    """
    lemma = lemma.upper()
    if lemma not in _SUITES:
        raise ValueError(f"unknown lemma {lemma!r}; expected one of {', '.join(LEMMAS)}")
    params = {"lemma": lemma, "n": n, "t": t, "m": m, **_scope(samples, seed)}

    def body(report):
        _SUITES[lemma](report, n, t, m, samples, seed)
        if len(report.failures) > max_failures:
            report.params["failures_total"] = len(report.failures)
            del report.failures[max_failures:]

    return _timed(lemma, params, body)
