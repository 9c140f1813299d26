"""Compiled raster-scan core of the simulator.

The kernel visits unsimulated cells bottom-up, left-to-right and fills
each one by randomized pattern selection. Random traversal is a lazy
Fisher-Yates shuffle: exactly one randint(j, P) draw per examined
candidate, nothing else touches the stream, so an unoptimized driver
performing the same draws reproduces the kernel bit for bit.

Two shortcuts keep the scan fast without changing any selection:

* a candidate whose location term alone already rules out both
  acceptance and a strict improvement is skipped before its angle sum;
* the angle sum aborts once the partial distance rules both out, since
  every term is non-negative and float addition, division by a positive
  constant and multiplication by a non-negative constant are monotone.

Both decisions compare values computed with the exact expression shape
of the final distance, so they never misclassify a candidate.
"""
from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def seed_stream(seed32: int) -> None:
    """Seed the generator compiled code draws from."""
    np.random.seed(seed32)


@njit(cache=True)
def draw_randint(lo: int, hi: int) -> int:
    """One draw from the compiled-code generator; exposed for drivers."""
    return np.random.randint(lo, hi)


@njit(cache=True)
def scan_fill(principal, rep, simulated, base_rep, base_cprin, base_crep,
              base_ax, base_ay, off_dx, off_dy, beta, accept_a, nd_pen,
              unit_scaled, seed32):
    """Fill every unsimulated cell in place; returns the early-accept count.

    principal/rep/simulated are the three layers of the simulation grid.
    base_* columns describe the pattern base; off_* the template offsets.
    nd_pen is pi/b. Unsimulated cells always lie at x >= w and y >= h,
    so template offsets can only fall off the right edge; dropped
    offsets leave the comparison on both sides and unit scaling divides
    by the surviving count.
    """
    height, width = principal.shape
    npat, noff = base_rep.shape
    np.random.seed(seed32)
    nd_pen2 = nd_pen * nd_pen
    loc_den = float((width - 1) * (width - 1) + (height - 1) * (height - 1))
    order = np.arange(npat)
    swaps = np.empty(npat, dtype=np.int64)
    ev = np.empty(noff)
    live = np.empty(noff, dtype=np.bool_)
    accepted = 0
    for y in range(height):
        for x in range(width):
            if simulated[y, x]:
                continue
            n_live = 0
            for j in range(noff):
                ox = x + off_dx[j]
                oy = y + off_dy[j]
                if 0 <= ox < width and 0 <= oy < height:
                    live[j] = True
                    ev[j] = rep[oy, ox]
                    n_live += 1
                else:
                    live[j] = False
            tvf_den = n_live * nd_pen2 if unit_scaled else 1.0
            best_d = np.inf
            best_c = -1
            chosen = -1
            n_exam = 0
            for j in range(npat):
                r = np.random.randint(j, npat)
                order[j], order[r] = order[r], order[j]
                swaps[j] = r
                n_exam = j + 1
                c = order[j]
                ddx = float(x - base_ax[c])
                ddy = float(y - base_ay[c])
                dloc = ddx * ddx + ddy * ddy
                if unit_scaled:
                    dloc = dloc / loc_den
                lb = (1.0 - beta) * dloc
                if lb >= best_d and lb > accept_a:
                    continue
                if beta == 0.0:
                    d = lb
                else:
                    s = 0.0
                    dead = False
                    for k in range(noff):
                        if not live[k]:
                            continue
                        u = ev[k]
                        v = base_rep[c, k]
                        u_nd = u != u
                        v_nd = v != v
                        if u_nd and v_nd:
                            continue
                        if u_nd or v_nd:
                            s += nd_pen2
                        else:
                            diff = u - v
                            s += diff * diff
                        pd = beta * (s / tvf_den) + lb
                        if pd >= best_d and pd > accept_a:
                            dead = True
                            break
                    if dead:
                        continue
                    d = beta * (s / tvf_den) + lb
                if d <= accept_a:
                    chosen = c
                    accepted += 1
                    break
                if d < best_d:
                    best_d = d
                    best_c = c
            if chosen < 0:
                chosen = best_c
            for j in range(n_exam - 1, -1, -1):
                r = swaps[j]
                order[j], order[r] = order[r], order[j]
            principal[y, x] = base_cprin[chosen]
            rep[y, x] = base_crep[chosen]
            simulated[y, x] = True
    return accepted
