"""Shared test helpers: step-by-step replays of the linear-layer identities."""

import numpy as np

from mqclifford import f2


def x_mat(xi):
    n = xi.shape[0]
    return np.block([[f2.identity(n), xi], [f2.zeros(n), f2.identity(n)]])


def z_mat(xi):
    n = xi.shape[0]
    return np.block([[f2.identity(n), f2.zeros(n)], [xi, f2.identity(n)]])


def blocks(a, b, c, d):
    return np.block([[a, b], [c, d]])


def replay_left(a, left, right):
    """Left-multiplication derivation for B = left @ right; returns a list of
    (computed, expected) matrices after every step."""
    n = a.shape[0]
    eye, zero = f2.identity(n), f2.zeros(n)
    li, ri = f2.invert(left), f2.invert(right)
    cur = blocks(a, zero, zero, f2.mul(left, right))
    out = [(cur, blocks(a, zero, zero, f2.mul(left, right)))]
    cur = f2.mul(x_mat(li), cur)
    out.append((cur, blocks(a, right, zero, f2.mul(left, right))))
    cur = f2.mul(z_mat(left), cur)
    out.append((cur, blocks(a, right, ri, zero)))
    cur = f2.mul(x_mat(li), cur)
    out.append((cur, blocks(zero, right, ri, zero)))
    cur = f2.mul(x_mat(right), cur)
    out.append((cur, blocks(eye, right, ri, zero)))
    cur = f2.mul(z_mat(ri), cur)
    out.append((cur, x_mat(right)))
    return out


def replay_right(a, left, right):
    """Right-multiplication derivation for B = left @ right."""
    n = a.shape[0]
    eye, zero = f2.identity(n), f2.zeros(n)
    li, ri = f2.invert(left), f2.invert(right)
    b = f2.mul(left, right)
    cur = blocks(a, zero, zero, b)
    out = [(cur, blocks(a, zero, zero, b))]
    cur = f2.mul(cur, z_mat(ri))
    out.append((cur, blocks(a, zero, left, b)))
    cur = f2.mul(cur, x_mat(right))
    out.append((cur, blocks(a, li, left, zero)))
    cur = f2.mul(cur, z_mat(ri))
    out.append((cur, blocks(zero, li, left, zero)))
    cur = f2.mul(cur, z_mat(left))
    out.append((cur, blocks(eye, li, left, zero)))
    cur = f2.mul(cur, x_mat(li))
    out.append((cur, z_mat(left)))
    return out
