"""Sample random quartic del Pezzo surfaces over F_q.

Checks that Jbar is unchanged by Moebius moves and that every Jbar collision is a genuine equivalence.
"""

import argparse
import itertools
import random
from collections import defaultdict
from dataclasses import dataclass

from cremona.delpezzo import Jbar, QuarticDP, random_quartic
from cremona.exactfield import FieldKind


@dataclass
class JbarConfig:
    q: int = 101
    samples: int = 200
    moves: int = 3
    seed: int = 0


def _moved(S: QuarticDP, kind: FieldKind, rng: random.Random) -> QuarticDP | None:
    while True:
        a, b, c, d = (kind(rng.randrange(kind.q)) for _ in range(4))
        if a * d - b * c:
            break
    images = []
    for lam in S.lambdas:
        den = c * lam + d
        if not den:
            return None
        images.append((a * lam + b) / den)
    rng.shuffle(images)
    return QuarticDP(tuple(images))


def _cross_ratio(a: int, b: int, c: int, d: int, q: int) -> int:
    return (a - c) * (b - d) * pow((a - d) * (b - c), -1, q) % q


def equivalent(S: QuarticDP, T: QuarticDP, q: int) -> bool:
    """Brute-force test for a Moebius map carrying the five points of S onto those of T."""
    A = [lam.v for lam in S.lambdas]
    B = [lam.v for lam in T.lambdas]
    for src in itertools.permutations(A, 4):
        rest_src = next(a for a in A if a not in src)
        for dst in itertools.permutations(B, 4):
            if _cross_ratio(*src, q) != _cross_ratio(*dst, q):
                continue
            rest_dst = next(b for b in B if b not in dst)
            if _cross_ratio(*src[:3], rest_src, q) == _cross_ratio(*dst[:3], rest_dst, q):
                return True
    return False


def run(cfg: JbarConfig) -> dict:
    kind = FieldKind.prime(cfg.q)
    rng = random.Random(cfg.seed)
    invariant_ok = 0
    checked = 0
    classes = defaultdict(list)
    for _ in range(cfg.samples):
        S = random_quartic(kind, rng, cfg.q)
        value = Jbar(S)
        classes[value].append(S)
        for _ in range(cfg.moves):
            T = _moved(S, kind, rng)
            if T is None:
                continue
            checked += 1
            invariant_ok += Jbar(T) == value
    collisions = [group for group in classes.values() if len(group) > 1]
    genuine = sum(all(equivalent(group[0], T, cfg.q) for T in group[1:]) for group in collisions)
    return {
        "samples": cfg.samples,
        "distinct_jbar": len(classes),
        "collisions": len(collisions),
        "collisions_equivalent": genuine,
        "moves_checked": checked,
        "moves_invariant": invariant_ok,
    }


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    defaults = JbarConfig()
    parser.add_argument("--q", type=int, default=defaults.q)
    parser.add_argument("--samples", type=int, default=defaults.samples)
    parser.add_argument("--moves", type=int, default=defaults.moves)
    parser.add_argument("--seed", type=int, default=defaults.seed)
    result = run(JbarConfig(**vars(parser.parse_args())))
    for key, value in result.items():
        print(f"{key}: {value}")


if __name__ == "__main__":
    main()
