#!/usr/bin/env python3
"""Writes the synthetic Bangalore trip sample used to fit the default Rapido
fare line. Deterministic for a given --seed.

Fares follow 30 + 12 * distance_km rupees plus Gaussian noise (sd 4), rounded
to whole rupees. About one row in five leaves distance_km blank so that the
loader back-fills it from the area registry.
"""
import argparse
import csv
import math
import random

R_KM = 6371.0


def haversine(a, b):
    la1, lo1 = map(math.radians, a)
    la2, lo2 = map(math.radians, b)
    h = (math.sin((la2 - la1) / 2) ** 2
         + math.cos(la1) * math.cos(la2) * math.sin((lo2 - lo1) / 2) ** 2)
    return 2 * R_KM * math.asin(math.sqrt(h))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--areas", default="config/areas.csv")
    ap.add_argument("--out", default="data/bangalore_trips_synthetic.csv")
    ap.add_argument("--rows", type=int, default=240)
    ap.add_argument("--seed", type=int, default=2024)
    ap.add_argument("--circuity", type=float, default=1.3)
    args = ap.parse_args()

    with open(args.areas, newline="") as f:
        rows = [r for r in f if not r.lstrip().startswith("#")]
    areas = {r["name"]: (float(r["lat"]), float(r["lon"])) for r in csv.DictReader(rows)}
    names = sorted(areas)

    rng = random.Random(args.seed)
    with open(args.out, "w", newline="") as f:
        f.write("# SYNTHETIC sample shaped like Bangalore bike/auto trip records.\n")
        f.write("# Generated by tools/gen_synthetic_trips.py; not real provider data.\n")
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["from", "to", "distance_km", "fare"])
        for _ in range(args.rows):
            a, b = rng.sample(names, 2)
            d = haversine(areas[a], areas[b]) * args.circuity
            fare = max(25, round(30 + 12 * d + rng.gauss(0, 4)))
            blank = rng.random() < 0.2
            w.writerow([a, b, "" if blank else f"{d:.2f}", fare])


if __name__ == "__main__":
    main()
