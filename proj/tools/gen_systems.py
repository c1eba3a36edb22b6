#!/usr/bin/env python3
"""Assembles the reduced-mesh system files shipped in data/.

wave2d.sys     plane-strain half domain under a step load (linear triangles,
               lumped mass)
hydration.sys  quarter of a concrete block with convection and heat of
               hydration (linear tetrahedra, consistent capacity), with
               interval-valued input parameters
hydration_fixed.sys  same block with point-valued parameters

Usage: gen_systems.py [out_dir]
"""

import math
import sys
from pathlib import Path

import numpy as np
import scipy.sparse as sp


def write_system(path, kind, matrices, inputs, header):
    n = matrices["K"].shape[0]
    with open(path, "w") as out:
        for line in header:
            out.write(f"# {line}\n")
        out.write(f"kind: {kind}\nn: {n}\n")
        for name, mat in matrices.items():
            out.write(f"matrix {name}\n")
            coo = sp.coo_matrix(mat)
            coo.sum_duplicates()
            for i, j, v in sorted(zip(coo.row, coo.col, coo.data)):
                if v != 0.0:
                    out.write(f"{i + 1} {j + 1} {v:.17g}\n")
        for f0, model in inputs:
            out.write("input\nf0: " + " ".join(f"{v:.17g}" for v in f0) + "\n")
            out.write(f"model: {model}\n")


def wave2d(out_dir):
    e, nu, rho = 1.8773e10, 0.25, 2200.0
    width = height = 3200.0
    nx = ny = 10
    xs = np.linspace(0.0, width, nx + 1)
    ys = np.linspace(0.0, height, ny + 1)
    node = lambda i, j: j * (nx + 1) + i
    coords = np.array([(x, y) for y in ys for x in xs])
    tris = []
    for j in range(ny):
        for i in range(nx):
            a, b, c, d = node(i, j), node(i + 1, j), node(i + 1, j + 1), node(i, j + 1)
            tris += [(a, b, c), (a, c, d)]

    lam = e * nu / ((1 + nu) * (1 - 2 * nu))
    mu = e / (2 * (1 + nu))
    dmat = np.array([[lam + 2 * mu, lam, 0], [lam, lam + 2 * mu, 0], [0, 0, mu]])
    ndof = 2 * len(coords)
    k = sp.lil_matrix((ndof, ndof))
    m = np.zeros(ndof)
    for t in tris:
        p = coords[list(t)]
        area = 0.5 * abs(np.linalg.det(np.column_stack([np.ones(3), p])))
        b = np.zeros((3, 6))
        for a in range(3):
            j1, j2 = (a + 1) % 3, (a + 2) % 3
            bx = p[j1, 1] - p[j2, 1]
            by = p[j2, 0] - p[j1, 0]
            sign = np.linalg.det(np.column_stack([np.ones(3), p]))
            bx, by = bx / sign, by / sign
            b[0, 2 * a] = bx
            b[1, 2 * a + 1] = by
            b[2, 2 * a] = by
            b[2, 2 * a + 1] = bx
        ke = area * b.T @ dmat @ b
        dofs = [2 * t[a] + c for a in range(3) for c in range(2)]
        for r in range(6):
            for s in range(6):
                k[dofs[r], dofs[s]] += ke[r, s]
            m[dofs[r]] += rho * area / 3.0

    # Symmetry axis x = 0 keeps u_x = 0; bottom and right edges are fixed.
    fixed = set()
    for idx, (x, y) in enumerate(coords):
        if x == 0.0:
            fixed.add(2 * idx)
        if y == 0.0 or x == width:
            fixed.update((2 * idx, 2 * idx + 1))
    free = [d for d in range(ndof) if d not in fixed]
    pos = {d: i for i, d in enumerate(free)}
    k = sp.csr_matrix(k)[free][:, free]
    mass = sp.diags(m[free])

    load = np.zeros(len(free))
    load[pos[2 * node(0, ny) + 1]] = -1.0
    a_node = node(int(round(2560.0 / (width / nx))), ny)
    ux_a = pos[2 * a_node]
    header = [
        f"plane strain, {len(tris)} triangles, {len(coords)} nodes, {len(free)} free dofs",
        "load: 1e6 N downward at (0, 3200) on the half domain",
        f"node A (2560, 3200): u_x dof index {ux_a} (0-based)",
    ]
    write_system(out_dir / "wave2d.sys", "dynamics", {"K": k, "M": mass},
                 [(load, "constant 1e6")], header)
    return ux_a, len(free)


def hydration(out_dir):
    rho, c, kappa = 2485.0, 0.967, 9.37
    h_air, h_timb = 40.0, 500.0
    m_rate = 7.95e-3
    nx = ny = 4
    nz = 10
    xs, ys, zs = (np.linspace(0.0, 1.0, n + 1) for n in (nx, ny, nz))
    node = lambda i, j, l: (l * (ny + 1) + j) * (nx + 1) + i
    coords = np.array([(x, y, z) for z in zs for y in ys for x in xs])
    n = len(coords)

    # Kuhn split of each cube into six tetrahedra.
    kuhn = [(0, 1, 3, 7), (0, 1, 5, 7), (0, 2, 3, 7), (0, 2, 6, 7), (0, 4, 5, 7), (0, 4, 6, 7)]
    tets = []
    for l in range(nz):
        for j in range(ny):
            for i in range(nx):
                corner = [node(i + (q & 1), j + ((q >> 1) & 1), l + ((q >> 2) & 1)) for q in range(8)]
                tets += [tuple(corner[q] for q in t) for t in kuhn]

    k = sp.lil_matrix((n, n))
    cap = sp.lil_matrix((n, n))
    f_q = np.zeros(n)
    for t in tets:
        p = coords[list(t)]
        jac = np.column_stack([np.ones(4), p])
        vol = abs(np.linalg.det(jac)) / 6.0
        grads = np.linalg.inv(jac)[1:, :]
        ke = kappa * vol * grads.T @ grads
        ce = rho * c * vol / 20.0 * (np.ones((4, 4)) + np.eye(4))
        for r in range(4):
            f_q[t[r]] += vol / 4.0
            for s in range(4):
                k[t[r], t[s]] += ke[r, s]
                cap[t[r], t[s]] += ce[r, s]

    # Convection on the outer faces; x = 0 and y = 0 are symmetry planes.
    f_t = np.zeros(n)

    def face(quad, h):
        for tri in ((quad[0], quad[1], quad[2]), (quad[0], quad[2], quad[3])):
            p = coords[list(tri)]
            area = 0.5 * np.linalg.norm(np.cross(p[1] - p[0], p[2] - p[0]))
            for r in range(3):
                f_t[tri[r]] += h * area / 3.0
                for s in range(3):
                    k[tri[r], tri[s]] += h * area / 12.0 * (2.0 if r == s else 1.0)

    for j in range(ny):
        for i in range(nx):
            face((node(i, j, nz), node(i + 1, j, nz), node(i + 1, j + 1, nz), node(i, j + 1, nz)), h_air)
            face((node(i, j, 0), node(i + 1, j, 0), node(i + 1, j + 1, 0), node(i, j + 1, 0)), h_timb)
    for l in range(nz):
        for j in range(ny):
            face((node(nx, j, l), node(nx, j + 1, l), node(nx, j + 1, l + 1), node(nx, j, l + 1)), h_timb)
        for i in range(nx):
            face((node(i, ny, l), node(i + 1, ny, l), node(i + 1, ny, l + 1), node(i, ny, l + 1)), h_timb)

    omega = math.pi / 12.0
    a_idx = node(0, 0, int(round(0.6 * nz)))
    b_idx = node(0, 0, int(round(0.9 * nz)))
    header = [
        f"quarter block, {len(tets)} tetrahedra, {n} nodes; time in hours",
        "inputs: ambient mean T_min + T_var/2, heat of hydration Q_FH e^(-m t), ambient swing",
        f"control points: A (0, 0, 0.6) index {a_idx}, B (0, 0, 0.9) index {b_idx} (0-based)",
    ]
    mats = {"K": sp.csr_matrix(k), "C": sp.csr_matrix(cap)}
    f_hyd = f_q * rho * m_rate
    fixed = [(f_t, "constant 20"), (f_hyd, f"exponential {-m_rate:.17g} 330"),
             (f_t, f"sinusoid {omega:.17g} -3 0")]
    ranged = [(f_t, "constant 19 21"), (f_hyd, f"exponential {-m_rate:.17g} 313.5 346.5"),
              (f_t, f"sinusoid {omega:.17g} -4 -2 0 0")]
    write_system(out_dir / "hydration_fixed.sys", "heat", mats, fixed, header)
    write_system(out_dir / "hydration.sys", "heat", mats, ranged, header)
    return a_idx, b_idx, n


def main():
    out_dir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "data"
    out_dir.mkdir(parents=True, exist_ok=True)
    ux_a, nw = wave2d(out_dir)
    a_idx, b_idx, nh = hydration(out_dir)
    print(f"wave2d: {nw} dofs, node A u_x index {ux_a}")
    print(f"hydration: {nh} nodes, A index {a_idx}, B index {b_idx}")


if __name__ == "__main__":
    main()
