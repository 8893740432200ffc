"""Build the segment hierarchy of a code and look inside it.

The super-message matrix is a row of segment matrices. The root segment
carries the highest mode; every parity entry of a segment that sits over
an eligible (x, B) pair spawns a child of a smaller mode, and the childs
store those parity values at free positions of their own. This script
prints the tree for (k, d; mu) = (4, 6; 4) and shows one injection.
"""

import random

import numpy as np

from cascade_codes import (
    PrimeField,
    build_super_message,
    build_tree,
    code_params,
    segment_offsets,
)


def main():
    k, d, mu = 4, 6, 4
    tree = build_tree(k, d, mu)
    offsets, alpha = segment_offsets(tree)
    print(f"(k, d; mu) = ({k}, {d}; {mu}): {len(tree)} segments, "
          f"alpha = {alpha} columns")
    print(f"mode census: {tree.mode_census()}")
    print()
    print(f"{'id':>3} {'mode':>5} {'parent':>7} {'pair (x, B)':>14} "
          f"{'columns':>12} {'signature'}")
    for spec in tree.segments:
        pair = "-" if spec.is_root else f"{spec.injection_pair}"
        parent = "-" if spec.is_root else str(spec.parent_id)
        width = offsets[spec.segment_id + 1] - offsets[spec.segment_id] \
            if spec.segment_id + 1 < len(offsets) else alpha - offsets[-1]
        cols = f"[{offsets[spec.segment_id]}, "\
               f"{offsets[spec.segment_id] + width})"
        print(f"{spec.segment_id:>3} {spec.mode:>5} {parent:>7} {pair:>14} "
              f"{cols:>12} {spec.signature}")

    field = PrimeField(7)
    rng = random.Random(0)
    data = [rng.randrange(7) for _ in range(code_params(k, d, mu).file_size)]
    sm = build_super_message(field, k, d, mu, data)
    child = tree.segments[tree.children_of(0)[0]]
    delta = (sm.post_matrices[child.segment_id]
             - sm.pre_matrices[child.segment_id]) % 7
    print()
    print(f"segment {child.segment_id} receives injection pair "
          f"{child.injection_pair} from the root;")
    print(f"its injection matrix touches "
          f"{int(np.count_nonzero(delta))} of {delta.size} positions:")
    print(delta)


if __name__ == "__main__":
    main()
