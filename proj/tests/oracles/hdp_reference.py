#!/usr/bin/env python3
# Copyright 2026 The Forumtrace Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Independent numpy reference for online stick-breaking HDP.

Follows the update equations of gensim's HdpModel, with a deterministic,
seed-free initial lambda so the C++ trainer can be fed the same start state.
Used offline to freeze expected values into tests/hdp_test.cc; run
`python3 hdp_reference.py` to regenerate them.
"""

import numpy as np
from scipy.special import gammaln, psi


def dirichlet_expectation(alpha):
    return psi(alpha) - psi(np.sum(alpha, 1))[:, np.newaxis]


def expect_log_sticks(sticks):
    dig_sum = psi(np.sum(sticks, 0))
    elog_w = psi(sticks[0]) - dig_sum
    elog_1_w = psi(sticks[1]) - dig_sum
    n = len(sticks[0]) + 1
    out = np.zeros(n)
    out[0:n - 1] = elog_w
    out[1:] = out[1:] + np.cumsum(elog_1_w)
    return out


def log_normalize_rows(x):
    mx = np.max(x, axis=1)
    log_norm = mx + np.log(np.sum(np.exp(x - mx[:, np.newaxis]), axis=1))
    return x - log_norm[:, np.newaxis]


class Hdp:
    def __init__(self, num_words, num_docs, T, K, alpha, gamma, eta, kappa, tau,
                 init_lambda):
        self.W, self.D, self.T, self.K = num_words, num_docs, T, K
        self.alpha, self.gamma, self.eta = alpha, gamma, eta
        self.kappa, self.tau = kappa, tau
        self.lam = init_lambda.copy()
        self.lam_sum = self.lam.sum(1)
        self.sticks = np.zeros((2, T - 1))
        self.sticks[0] = 1.0
        self.sticks[1] = np.arange(T - 1, 0, -1, dtype=float)
        self.varphi_ss = np.zeros(T)
        self.updates = 0

    def elogbeta(self):
        return psi(self.eta + self.lam) - psi(self.W * self.eta + self.lam_sum)[:, np.newaxis]

    def doc_e_step(self, elogbeta, elogsticks_1st, ids, cts, var_converge=1e-4):
        K = self.K
        cts = np.asarray(cts, dtype=float)
        eb = elogbeta[:, ids]
        v = np.zeros((2, K - 1))
        v[0] = 1.0
        v[1] = self.alpha
        phi = np.ones((len(ids), K)) / K
        old = -1e200
        converge = 1.0
        it = 0
        elogsticks_2nd = None
        while it < 100 and (converge < 0.0 or converge > var_converge):
            var_phi = phi.T @ (eb * cts).T
            if it >= 3:
                var_phi = var_phi + elogsticks_1st
            log_var_phi = log_normalize_rows(var_phi)
            var_phi = np.exp(log_var_phi)
            phi = (var_phi @ eb).T
            if it >= 3:
                phi = phi + elogsticks_2nd
            log_phi = log_normalize_rows(phi)
            phi = np.exp(log_phi)
            phi_all = phi * cts[:, np.newaxis]
            v[0] = 1.0 + np.sum(phi_all[:, :K - 1], 0)
            phi_cum = np.flipud(np.sum(phi_all[:, 1:], 0))
            v[1] = self.alpha + np.flipud(np.cumsum(phi_cum))
            elogsticks_2nd = expect_log_sticks(v)

            lik = np.sum((elogsticks_1st - log_var_phi) * var_phi)
            lik += (K - 1) * np.log(self.alpha)
            dig_sum = psi(np.sum(v, 0))
            lik += np.sum((np.array([1.0, self.alpha])[:, np.newaxis] - v) * (psi(v) - dig_sum))
            lik -= np.sum(gammaln(np.sum(v, 0))) - np.sum(gammaln(v))
            lik += np.sum((elogsticks_2nd - log_phi) * phi)
            lik += np.sum(phi.T * (var_phi @ (eb * cts)))
            converge = (lik - old) / abs(old)
            old = lik
            it += 1
        return lik, var_phi, phi

    def update_chunk(self, docs):
        elogbeta = self.elogbeta()
        elogsticks_1st = expect_log_sticks(self.sticks)
        sticks_ss = np.zeros(self.T)
        beta_ss = np.zeros((self.T, self.W))
        for ids, cts in docs:
            _, var_phi, phi = self.doc_e_step(elogbeta, elogsticks_1st, ids, cts)
            sticks_ss += var_phi.sum(0)
            beta_ss[:, ids] += var_phi.T @ (phi.T * np.asarray(cts, dtype=float))
        self.updates += 1
        rho = (self.tau + self.updates) ** (-self.kappa)
        n = len(docs)
        self.lam = (1 - rho) * self.lam + rho * self.D * beta_ss / n
        self.lam_sum = (1 - rho) * self.lam_sum + rho * self.D * beta_ss.sum(1) / n
        self.varphi_ss = (1 - rho) * self.varphi_ss + rho * sticks_ss * self.D / n
        # Stable descending sort by topic mass.
        order = sorted(range(self.T), key=lambda t: -self.lam_sum[t])
        self.lam = self.lam[order]
        self.lam_sum = self.lam_sum[order]
        self.varphi_ss = self.varphi_ss[order]
        self.sticks[0] = self.varphi_ss[:self.T - 1] + 1.0
        self.sticks[1] = np.flipud(np.cumsum(np.flipud(self.varphi_ss[1:]))) + self.gamma

    def stick_weights(self):
        s = self.sticks[0] / (self.sticks[0] + self.sticks[1])
        w = np.zeros(self.T)
        left = 1.0
        for i in range(self.T - 1):
            w[i] = s[i] * left
            left -= w[i]
        w[self.T - 1] = left
        return w

    def theta(self, ids, cts):
        _, var_phi, phi = self.doc_e_step(self.elogbeta(), expect_log_sticks(self.sticks), ids, cts)
        cts = np.asarray(cts, dtype=float)
        out = (phi * cts[:, np.newaxis]).sum(0) @ var_phi
        return out / out.sum()


def fixed_init(T, W):
    t = np.arange(T)[:, np.newaxis]
    w = np.arange(W)[np.newaxis, :]
    return ((t * 7 + w * 3) % 11 + 1) / 11.0


def run(docs, W, T, K, passes, batch):
    h = Hdp(W, len(docs), T, K, alpha=0.01, gamma=1.0, eta=0.01, kappa=1.0, tau=64.0,
            init_lambda=fixed_init(T, W))
    for _ in range(passes):
        for s in range(0, len(docs), batch):
            h.update_chunk(docs[s:s + batch])
    return h


if __name__ == "__main__":
    np.set_printoptions(precision=17)
    docs = [([0, 1], [3, 1]), ([1, 2], [2, 2]), ([0, 2, 3], [1, 1, 4]), ([3], [5])]
    h = run(docs, W=4, T=6, K=3, passes=3, batch=2)
    print("stick_weights", repr(h.stick_weights()))
    print("lambda_row0", repr(h.lam[0]))
    print("lambda_sum", repr(h.lam_sum))
    print("theta_doc2", repr(h.theta([0, 2, 3], [1, 1, 4])))

    # Degenerate corpus: one repeated word.
    for ndocs in (10, 20, 40):
        rep = [([0], [8])] * ndocs
        g = run(rep, W=1, T=150, K=15, passes=10, batch=min(256, ndocs))
        print("repeated-word docs=%d max stick weight" % ndocs, g.stick_weights().max())
