"""Regenerate the FCIDUMP fixtures under tests/data.

Integrals are written in the Lowdin-orthogonalised atomic-orbital basis so
that point-group operations act on orbitals as signed permutations.
Requires pyscf.  Usage: python3 make_fixtures.py OUTDIR
"""
import json
import sys

import numpy as np
from pyscf import ao2mo, fci, gto, lo, scf
from pyscf.tools import fcidump


def nh3_geometry(r=1.012, angle_deg=106.7):
    # N at origin, H atoms below it on a C3 axis along z; H1 in the xz plane.
    theta = np.deg2rad(angle_deg)
    # angle between two N-H bonds fixes the polar angle of each bond
    cos_polar = np.sqrt((1.0 + 2.0 * np.cos(theta)) / 3.0)
    sin_polar = np.sqrt(1.0 - cos_polar**2)
    atoms = [("N", (0.0, 0.0, 0.0))]
    for k in range(3):
        phi = 2.0 * np.pi * k / 3.0
        atoms.append(("H", (r * sin_polar * np.cos(phi), r * sin_polar * np.sin(phi), -r * cos_polar)))
    return atoms


MOLECULES = {
    "h2": {
        "atom": [("H", (0, 0, 0)), ("H", (0, 0, 0.7414))],
        # spatial AO order: H1 1s, H2 1s
        "ops": [{"name": "C2(x)", "perm": [1, 0], "signs": [1, 1]}],
    },
    "lih": {
        "atom": [("Li", (0, 0, 0)), ("H", (0, 0, 1.595))],
        # Li 1s 2s 2px 2py 2pz, H 1s
        "ops": [
            {"name": "sigma(xz)", "perm": [0, 1, 2, 3, 4, 5], "signs": [1, 1, 1, -1, 1, 1]},
            {"name": "sigma(yz)", "perm": [0, 1, 2, 3, 4, 5], "signs": [1, 1, -1, 1, 1, 1]},
        ],
    },
    "beh2": {
        "atom": [("Be", (0, 0, 0)), ("H", (1.291, 0, 0)), ("H", (-1.291, 0, 0))],
        # Be 1s 2s 2px 2py 2pz, H1 1s, H2 1s; molecular axis along x
        "ops": [
            {"name": "sigma(xy)", "perm": [0, 1, 2, 3, 4, 5, 6], "signs": [1, 1, 1, 1, -1, 1, 1]},
            {"name": "sigma(yz)", "perm": [0, 1, 2, 3, 4, 6, 5], "signs": [1, 1, -1, 1, 1, 1, 1]},
            {"name": "sigma(xz)", "perm": [0, 1, 2, 3, 4, 5, 6], "signs": [1, 1, 1, -1, 1, 1, 1]},
        ],
    },
    "h2o": {
        "atom": [("O", (0, 0, 0)), ("H", (0, 0.757, 0.587)), ("H", (0, -0.757, 0.587))],
        # O 1s 2s 2px 2py 2pz, H1, H2; molecular plane yz, C2 axis z
        "ops": [
            {"name": "C2(z)", "perm": [0, 1, 2, 3, 4, 6, 5], "signs": [1, 1, -1, -1, 1, 1, 1]},
            {"name": "sigma_v(xz)", "perm": [0, 1, 2, 3, 4, 6, 5], "signs": [1, 1, 1, -1, 1, 1, 1]},
            {"name": "sigma_v(yz)", "perm": [0, 1, 2, 3, 4, 5, 6], "signs": [1, 1, -1, 1, 1, 1, 1]},
        ],
    },
    "nh3": {
        "atom": nh3_geometry(),
        # N 1s 2s 2px 2py 2pz, H1 (xz plane), H2, H3. Only the reflection
        # through the xz plane is a signed permutation in this basis.
        "ops": [
            {"name": "sigma_v(xz)", "perm": [0, 1, 2, 3, 4, 5, 7, 6], "signs": [1, 1, 1, -1, 1, 1, 1, 1]},
        ],
    },
}


def build(name, spec, outdir):
    mol = gto.M(atom=spec["atom"], basis="sto-3g", unit="Angstrom", symmetry=False, verbose=0)
    c = lo.orth_ao(mol, "lowdin")
    h1 = c.T @ scf.hf.get_hcore(mol) @ c
    eri = ao2mo.full(mol, c, compact=False).reshape([c.shape[1]] * 4)
    norb = c.shape[1]
    nelec = mol.nelectron
    fcidump.from_integrals(f"{outdir}/{name}.fcidump", h1, ao2mo.restore(8, eri, norb), norb, nelec,
                           nuc=mol.energy_nuc(), ms=0, tol=1e-14, float_format=" %.16g")
    with open(f"{outdir}/{name}.sym.json", "w") as f:
        json.dump({"n_spatial": norb, "operations": spec["ops"]}, f, indent=2)
        f.write("\n")
    # Reference energies per (n_alpha, n_beta) sector around the neutral filling.
    solver = fci.direct_spin1.FCI()
    solver.conv_tol = 1e-12
    ref = {}
    na0 = nelec // 2
    for da in (-1, 0, 1):
        for db in (-1, 0, 1):
            na, nb = na0 + da, na0 + db
            if not (0 <= na <= norb and 0 <= nb <= norb):
                continue
            e, _ = solver.kernel(h1, eri, norb, (na, nb), ecore=mol.energy_nuc(), nroots=1)
            ref[f"{na},{nb}"] = float(e)
    print(name, "norb", norb, "nelec", nelec, json.dumps(ref))
    return ref


if __name__ == "__main__":
    out = sys.argv[1] if len(sys.argv) > 1 else "."
    refs = {n: build(n, s, out) for n, s in MOLECULES.items()}
    with open(f"{out}/fci_reference.json", "w") as f:
        json.dump(refs, f, indent=2, sort_keys=True)
        f.write("\n")
