"""Run every check on the seeded random corpus and write a JSON summary."""
import argparse
import json
from dataclasses import asdict, dataclass
from typing import Optional

from cmreg.pipeline import corpus_run


@dataclass
class CorpusConfig:
    seed: int = 0
    monomial: int = 100
    binomial: int = 50
    out: Optional[str] = None


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=CorpusConfig.seed)
    ap.add_argument("--monomial", type=int, default=CorpusConfig.monomial)
    ap.add_argument("--binomial", type=int, default=CorpusConfig.binomial)
    ap.add_argument("--out", default=None, help="write the summary here as JSON")
    cfg = CorpusConfig(**vars(ap.parse_args()))
    summary = corpus_run(cfg.seed, cfg.monomial, cfg.binomial)
    print(f"{summary.instances} instances, {summary.verdicts} checks, {len(summary.failures)} failures, "
          f"{len(summary.errors)} errors, {summary.elapsed:.2f}s")
    for thm, (n, ok) in summary.by_theorem.items():
        print(f"  {thm:<18} {ok}/{n}")
    if cfg.out:
        with open(cfg.out, "w") as fh:
            json.dump({"config": asdict(cfg), "summary": summary.to_dict()}, fh, indent=2)
    raise SystemExit(0 if summary.ok else 1)


if __name__ == "__main__":
    main()
