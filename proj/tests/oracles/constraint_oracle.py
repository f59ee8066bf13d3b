#!/usr/bin/env python3
"""Independent arithmetic for the well-posedness inequalities.

Plain-float evaluation written directly from the inequality formulas; shares
no code with the C++ checker. Prints C++ initializer rows that are frozen into
tests/acceptance_values.hpp.
"""
import math


def evaluate(Da, alpha_t, rho_t, nu_p, k1, k2, phi_s, LrAr, kL, gamma2, k0,
             ck, cp, cs, ct, vol, area, bf=0.0, bs=0.0, Tinf=1.0, lam=0.0):
    a1 = rho_t / (2 * (1 + nu_p))
    a2 = nu_p * rho_t / ((1 + nu_p) * (1 - 2 * nu_p))
    a0 = alpha_t ** 2 * (1 + LrAr)
    # constant data magnitudes -> L2 norms
    n_bf = bf * math.sqrt(vol)
    n_bs = bs * math.sqrt(vol)
    n_T = Tinf * math.sqrt(area)
    n_a0 = a0 * math.sqrt(vol)

    alpha = min(2.0, k1 / (2 * Da)) / ck
    mid = 2 * a1 / ck - cp * k2 ** 2 / (2 * k1 * Da)
    a3 = min(alpha, mid, a0 / 2)
    a4 = math.sqrt((n_bf + math.sqrt(ct) * n_T) ** 2 + n_a0 ** 2 + cp * n_bs ** 2)

    astar = min(2.0, k1 / Da) / ck
    a4s = math.sqrt((n_bf + math.sqrt(ct) * n_T) ** 2 + a0 ** 2 * vol)
    a3s = min(astar, a0)
    denom5 = 2 * a1 / ck - cs * k0 * math.sqrt(cp) * a4s / (a3s * Da)
    a5s = (math.sqrt(cp) * n_bs + (a4s / a3s) * (phi_s + cs * k0 * vol / Da)) / denom5

    rows = []
    rows.append(("assu.1", 2 * a1 / ck, cp * k2 ** 2 / (2 * k1 * Da)))
    rows.append(("assu.2", a2, phi_s ** 2 / (2 * a0)))
    rows.append(("P4.1", 2 * alpha * Da, kL * a4 * cs / a3))
    rows.append(("P4.2", 4 * a1 * Da / ck,
                 cp * k2 ** 2 / k1 + kL * a4 * cs * (cp + 2 * math.sqrt(cp)) / a3))
    rows.append(("P4.3", 2 * a2, phi_s ** 2 / a0))
    rows.append(("Rassup1", 2 * a1 / ck, cs * k0 * math.sqrt(cp) * a4s / (a3s * Da)))
    tail = math.sqrt(2) * k0 * (math.sqrt(vol) + math.sqrt(cp) * a5s)
    rows.append(("Nasum1.1", 2 * astar * Da / cs, kL * a4s / a3s + tail))
    rows.append(("Nasum1.2", a2, phi_s ** 2 / (2 * a0)))
    rows.append(("Nasum2", 4 * a1 * Da / (ck * cs),
                 kL * a4s / a3s * (cp + 2 * math.sqrt(cp)) + tail))
    rows.append(("P14.1", 2 * alpha * Da, gamma2 * cs * a4 / a3))
    rows.append(("P14.2", 4 * a1 * Da / ck, cp * k2 ** 2 / k1 + gamma2 * cs * a4 / a3))
    rows.append(("P14.3", a2, phi_s ** 2 / (2 * a0) + gamma2 * cs * a4 / (a3 * Da)))
    derived = dict(alpha1=a1, alpha2=a2, a0=a0, alpha=alpha, alpha3=a3, alpha4=a4,
                   alpha_star=astar, alpha3_star=a3s, alpha4_star=a4s, alpha5_star=a5s)
    return rows, derived


def emit(tag, **kw):
    rows, d = evaluate(**kw)
    print(f"// {tag}")
    for k, v in d.items():
        print(f"//   {k} = {v!r}")
    for name, l, r in rows:
        print(f'    {{"{name}", {l!r}, {r!r}}},')


base = dict(Da=1e-3, alpha_t=1.0, rho_t=1e4, nu_p=0.45, k1=0.5, k2=1.4, phi_s=0.4,
            LrAr=1.0, kL=2e-3, gamma2=2e-3, k0=1.0, cp=0.5, cs=0.5, ct=2.0,
            vol=4 * math.pi / 3, area=4 * math.pi)
if __name__ == "__main__":
    emit("reference combination, c_k = 3", ck=3.0, **base)
    emit("reference combination, c_k = 2", ck=2.0, **base)
    alt = dict(base, Da=1e-1, k0=1e-2)
    emit("uniqueness combination Da = 0.1, k0 = 0.01, c_k = 3", ck=3.0, **alt)
    emit("uniqueness combination Da = 0.1, k0 = 0.01, c_k = 2", ck=2.0, **alt)
