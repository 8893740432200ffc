"""Walk the storage-bandwidth trade-off for one (k, d) pair.

Each mode mu between 1 and k is a distinct operating point: mu = 1
minimizes the repair bandwidth per node, mu = k minimizes the storage per
node, and every mode in between trades one against the other. The
normalized columns alpha/F and beta/F are what you would plot.
"""

from cascade_codes import code_params, special_points


def main():
    k, d = 4, 6
    print(f"storage-bandwidth trade-off for (k, d) = ({k}, {d})")
    print(f"{'mu':>4} {'alpha':>8} {'beta':>8} {'F':>10} "
          f"{'alpha/F':>10} {'beta/F':>10}")
    for mu in range(1, k + 1):
        p = code_params(k, d, mu)
        print(f"{p.mu:>4} {p.alpha:>8} {p.beta:>8} {p.file_size:>10} "
              f"{p.alpha / p.file_size:>10.6f} {p.beta / p.file_size:>10.6f}")

    pts = special_points(k, d)
    print()
    print(f"minimum-bandwidth point (mu = 1):     {pts.mbr.triple}")
    print(f"minimum-storage point   (mu = {k}):     {pts.msr.triple}")
    print(f"cut-set point           (mu = {k - 1}):     {pts.cutset.triple}")
    a, b, f = pts.cutset.triple
    print(f"cut-set identity F = (k-1)a + (d-k+1)b: "
          f"{f} = {(k - 1) * a} + {(d - k + 1) * b}"
          f" -> {'holds' if pts.cutset_identity_holds else 'FAILS'}")


if __name__ == "__main__":
    main()
