"""Tabulate the family k[[x,y]]/(x^2, x*y^r): lengths, hdeg, regularity and bound slack."""
import argparse
import json
import time
from dataclasses import asdict, dataclass

from cmreg.pipeline import analyze, example_family


@dataclass
class FamilyConfig:
    r_min: int = 1
    r_max: int = 8
    extra: int = 10  # tabulate l(A/m^{n+1}) for n = 0..r+extra
    json: bool = False


def run(cfg: FamilyConfig):
    rows = []
    for r in range(cfg.r_min, cfg.r_max + 1):
        t0 = time.perf_counter()
        rep = analyze(example_family(r), horizon=r + cfg.extra + 1)
        by = {(v.thm, dict(v.inputs).get("i")): v for v in rep.verdicts}
        rows.append(
            {
                "r": r,
                "lengths": rep.hs[: r + cfg.extra + 1],
                "e_coeffs": rep.e_coeffs,
                "lengthL": rep.lengthL,
                "hdeg": rep.hdeg,
                "I": rep.deviation,
                "reg": rep.reg,
                "reg_bound": by[("regularity", None)].bound,
                "e1_bound": by[("coeff", 1)].bound,
                "failures": len(rep.failures),
                "seconds": round(time.perf_counter() - t0, 4),
            }
        )
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    for name, val in asdict(FamilyConfig()).items():
        if isinstance(val, bool):
            ap.add_argument(f"--{name.replace('_', '-')}", action="store_true")
        else:
            ap.add_argument(f"--{name.replace('_', '-')}", type=type(val), default=val)
    cfg = FamilyConfig(**vars(ap.parse_args()))
    rows = run(cfg)
    if cfg.json:
        print(json.dumps({"config": asdict(cfg), "rows": rows}, indent=2))
        return
    print(f"{'r':>3} {'l(L)':>5} {'hdeg':>5} {'I':>3} {'reg':>4} {'bound':>6} {'|e1|':>5} {'bound':>6}  lengths")
    for row in rows:
        print(
            f"{row['r']:>3} {row['lengthL']:>5} {row['hdeg']:>5} {row['I']:>3} {row['reg']:>4} "
            f"{row['reg_bound']:>6} {abs(row['e_coeffs'][1]):>5} {row['e1_bound']:>6}  {row['lengths']}"
        )


if __name__ == "__main__":
    main()
