"""Fibre sizes of the cross-ratio j-map over small prime fields."""

import argparse
import json
from dataclasses import asdict, dataclass, field

from cremona.delpezzo import fiber_statistics


@dataclass
class FiberConfig:
    primes: list[int] = field(default_factory=lambda: [31, 43, 61])
    out: str | None = None


def run(cfg: FiberConfig) -> list[dict]:
    rows = []
    for q in cfg.primes:
        stats = fiber_statistics(q)
        rows.append(
            {
                "q": q,
                "zeta": stats.zeta,
                "alphas": stats.alphas,
                "singletons": len(stats.singletons),
                "fraction": round(stats.fraction, 3),
                "fiber_sizes": stats.fiber_sizes,
            }
        )
    return rows


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--primes", type=int, nargs="+", default=FiberConfig().primes)
    parser.add_argument("--out")
    cfg = FiberConfig(**vars(parser.parse_args()))
    rows = run(cfg)
    for row in rows:
        print(
            f"q={row['q']:>4}  zeta={row['zeta']:>3}  singletons={row['singletons']}/{row['alphas']}"
            f"  fraction={row['fraction']:.3f}  sizes={row['fiber_sizes']}"
        )
    if cfg.out:
        with open(cfg.out, "w") as fh:
            json.dump({"config": asdict(cfg), "rows": rows}, fh, indent=2)


if __name__ == "__main__":
    main()
