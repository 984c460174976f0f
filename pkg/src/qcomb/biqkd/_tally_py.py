"""Vectorized numpy round sampler, used when the compiled kernel is unavailable."""
import numpy as np


def tally(u, guess_cum, p_first, decode, net_w0, totals, eve):
    inp = (u[:, 0] * 4.0).astype(np.intp)
    enc = (u[:, 1] >= 0.5).astype(np.intp)
    net = (u[:, 2] >= net_w0).astype(np.intp)
    guess = (u[:, 3, None] >= guess_cum[inp, enc, net]).sum(axis=1)
    shifted = (u[:, 4] >= 0.5).astype(np.intp)
    outcome = (u[:, 5] >= p_first[inp, enc, net, guess, shifted]).astype(np.intp)
    dec = decode[inp, shifted, outcome]
    conclusive = dec >= 0
    totals[0] += int(conclusive.sum())
    totals[1] += int((conclusive & (dec != enc)).sum())
    flat = (net * 4 + guess) * 2 + enc
    eve += np.bincount(flat, minlength=eve.size).reshape(eve.shape)
