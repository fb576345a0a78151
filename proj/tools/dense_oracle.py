#!/usr/bin/env python3
"""Dense reference for factor files written by `bhh factor`.

Parses the BHF1 layout directly, forms G = H_1 ... H_k as an explicit dense
product of reflectors, and applies it (or reconstructs A) with numpy. Used to
cross-check the C++ banded kernels.

    dense_oracle.py apply FACTOR VECTOR [--transpose]
    dense_oracle.py reconstruct FACTOR
"""

import argparse
import struct
import sys

import numpy as np


def read_factor(path):
    data = open(path, "rb").read()
    if data[:4] != b"BHF1":
        raise ValueError("bad magic")
    m, n, placement, k, w = struct.unpack_from("<5I", data, 4)
    expected = 24 + 8 * (k + k * w + n * n)
    if len(data) != expected:
        raise ValueError(f"expected {expected} bytes, got {len(data)}")
    off = 24
    betas = np.frombuffer(data, "<f8", k, off)
    off += 8 * k
    tails = np.frombuffer(data, "<f8", k * w, off).reshape(k, w)
    off += 8 * k * w
    b = np.frombuffer(data, "<f8", n * n, off).reshape(n, n)
    return m, n, placement, betas, tails, b


def dense_g(m, betas, tails):
    g = np.eye(m)
    w = tails.shape[1] if tails.ndim == 2 else 0
    for i, beta in enumerate(betas):
        v = np.zeros(m)
        v[i] = 1.0
        v[i + 1 : i + 1 + w] = tails[i]
        g = g @ (np.eye(m) - beta * np.outer(v, v))
    return g


def read_matrix(path):
    lines = open(path).read().splitlines()
    rows, cols = map(int, lines[0].split())
    return np.array([[float(t) for t in lines[1 + i].split()] for i in range(rows)]).reshape(rows, cols)


def write_matrix(a):
    a = np.atleast_2d(a)
    out = [f"{a.shape[0]} {a.shape[1]}"]
    out += [" ".join(repr(float(x)) for x in row) for row in a]
    sys.stdout.write("\n".join(out) + "\n")


def main():
    ap = argparse.ArgumentParser()
    sub = ap.add_subparsers(dest="cmd", required=True)
    p_apply = sub.add_parser("apply")
    p_apply.add_argument("factor")
    p_apply.add_argument("vector")
    p_apply.add_argument("--transpose", action="store_true")
    p_rec = sub.add_parser("reconstruct")
    p_rec.add_argument("factor")
    args = ap.parse_args()

    m, n, placement, betas, tails, b = read_factor(args.factor)
    g = dense_g(m, betas, tails)
    if args.cmd == "apply":
        x = read_matrix(args.vector).reshape(-1)
        y = (g.T if args.transpose else g) @ x
        write_matrix(y.reshape(-1, 1))
    else:
        padded = np.zeros((m, n))
        if placement == 0:
            padded[:n] = b
        else:
            padded[m - n :] = b
        write_matrix(g @ padded)


if __name__ == "__main__":
    main()
