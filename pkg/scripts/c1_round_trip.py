"""Build G_I for random index sets, conjugate by random plane maps and recover the canonical invariant."""

import argparse
import random
import time
from dataclasses import dataclass

from cremona.birmap import PlaneMap
from cremona.conjclass import IndexSet, build_GI, canonicalize, normalize_c1
from cremona.exactfield import FieldKind
from cremona.moebius import MoebiusElt


@dataclass
class RoundTripConfig:
    q: int = 101
    trials: int = 10
    max_size: int = 3
    seed: int = 0


def _random_index_set(kind: FieldKind, rng: random.Random, max_size: int) -> IndexSet:
    pool = [v for v in range(kind.q) if kind(v) not in (kind(2), kind(-2))]
    return IndexSet(kind, tuple(rng.sample(pool, rng.randint(0, max_size))))


def _random_conjugator(kind: FieldKind, field, rng: random.Random) -> PlaneMap:
    while True:
        base = MoebiusElt(*(kind(rng.randint(-4, 4)) for _ in range(4)), kind)
        fibre = MoebiusElt(*(field.random_element(rng, 1, 3) for _ in range(4)), field)
        if base.det() and fibre.det():
            return PlaneMap(base, fibre)


def run(cfg: RoundTripConfig) -> list[tuple]:
    kind = FieldKind.prime(cfg.q)
    rng = random.Random(cfg.seed)
    rows = []
    for _ in range(cfg.trials):
        I = _random_index_set(kind, rng, cfg.max_size)
        G = build_GI(I)
        h = _random_conjugator(kind, G.elements[0].field, rng)
        start = time.perf_counter()
        found = normalize_c1(G.conjugate(h)).invariant
        rows.append((str(I), str(found.canonical), found == canonicalize(I), time.perf_counter() - start))
    return rows


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    defaults = RoundTripConfig()
    parser.add_argument("--q", type=int, default=defaults.q)
    parser.add_argument("--trials", type=int, default=defaults.trials)
    parser.add_argument("--max-size", dest="max_size", type=int, default=defaults.max_size)
    parser.add_argument("--seed", type=int, default=defaults.seed)
    rows = run(RoundTripConfig(**vars(parser.parse_args())))
    for I, canon, ok, secs in rows:
        print(f"{I:<20} -> {canon:<20} {'ok' if ok else 'MISMATCH'}  {secs:.2f}s")
    print(f"recovered {sum(r[2] for r in rows)}/{len(rows)}")


if __name__ == "__main__":
    main()
