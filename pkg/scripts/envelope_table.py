"""Size of the finiteness envelope for small d and q."""
import argparse
from dataclasses import dataclass

from cmreg.bounds import finiteness_envelope


@dataclass
class EnvelopeConfig:
    d_max: int = 3
    q_max: int = 4


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--d-max", type=int, default=EnvelopeConfig.d_max)
    ap.add_argument("--q-max", type=int, default=EnvelopeConfig.q_max)
    cfg = EnvelopeConfig(**vars(ap.parse_args()))
    print(f"{'d':>2} {'q':>2} {'splits':>6}  candidates")
    for d in range(1, cfg.d_max + 1):
        for q in range(1, cfg.q_max + 1):
            env = finiteness_envelope(d, q)
            c = str(env.count)
            shown = c if len(c) <= 30 else f"{c[:6]}...({len(c)} digits)"
            print(f"{d:>2} {q:>2} {len(env.splits):>6}  {shown}")


if __name__ == "__main__":
    main()
