#!/usr/bin/env python3
"""Regenerates the frozen expected values in test_optimizers.cpp.

Straight-line arithmetic only (no numpy, no shared code with the C++
implementation) so the trace values come from an independent route. Run and
paste the printed blocks into the test when the toy set or the update rules
change.
"""

import math

X = [
    [1.0, 0.2, 0.8],
    [1.0, 0.5, 0.1],
    [1.0, 0.9, 0.6],
    [1.0, 0.4, 0.3],
]
Y = [1.0, -1.0, 1.0, -1.0]
N = len(X)
P = len(X[0])
EPS_BOUND = 1e-8


def sigmoid(z):
    if z >= 0.0:
        return 1.0 / (1.0 + math.exp(-z))
    e = math.exp(z)
    return e / (1.0 + e)


def log_likelihood(beta):
    total = 0.0
    for i in range(N):
        margin = Y[i] * sum(X[i][j] * beta[j] for j in range(P))
        if margin < 0.0:
            total -= -margin + math.log1p(math.exp(margin))
        else:
            total -= math.log1p(math.exp(-margin))
    return total


def gradient(beta):
    g = [0.0] * P
    for j in range(P):
        s = 0.0
        for i in range(N):
            margin = Y[i] * sum(X[i][k] * beta[k] for k in range(P))
            s += (1.0 - sigmoid(margin)) * Y[i] * X[i][j]
        g[j] = s
    return g


def b_bar():
    # abs row sums of -(1/4) X^T X, plus epsilon, inverted
    bb = []
    for j in range(P):
        row = EPS_BOUND
        for k in range(P):
            h = 0.0
            for i in range(N):
                h += X[i][j] * X[i][k]
            row += abs(-0.25 * h)
        bb.append(1.0 / row)
    return bb


def enhanced_nag(iters):
    bb = b_bar()
    v = [0.0] * P
    w = [0.0] * P
    a0 = 0.01
    a1 = 0.5 * (1.0 + math.sqrt(1.0 + 4.0 * a0 * a0))
    mles = []
    for count in range(1, iters + 1):
        g = gradient(w)
        gamma = 1.0 / (N * count)
        eta = (1.0 - a0) / a1
        for j in range(P):
            w_temp = w[j] + (1.0 + gamma) * (bb[j] * g[j])
            w[j] = (1.0 - eta) * w_temp + eta * v[j]
            v[j] = w_temp
        a0, a1 = a1, 0.5 * (1.0 + math.sqrt(1.0 + 4.0 * a1 * a1))
        mles.append(log_likelihood(v))
    return mles, v


def enhanced_adagrad(iters, eta=0.01, eps=1e-8):
    bb = b_bar()
    beta = [0.0] * P
    acc = [0.0] * P
    mles = []
    for _ in range(iters):
        g = gradient(beta)
        for j in range(P):
            quad = bb[j] * g[j]
            acc[j] += quad * quad
            beta[j] += (1.0 + eta) / (eps + math.sqrt(acc[j])) * quad
        mles.append(log_likelihood(beta))
    return mles, beta


def show(name, mles, weights):
    print(f"// {name}")
    print("mle     = {" + ", ".join(repr(v) for v in mles) + "}")
    print("weights = {" + ", ".join(repr(v) for v in weights) + "}")


if __name__ == "__main__":
    nag_mles, nag_w = enhanced_nag(3)
    show("enhanced NAG, 3 iterations", nag_mles, nag_w)
    ada_mles, ada_w = enhanced_adagrad(3)
    show("enhanced Adagrad, 3 iterations", ada_mles, ada_w)
