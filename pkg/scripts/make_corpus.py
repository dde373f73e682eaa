"""Regenerate the shipped sample form files in src/skewjacobi/data/forms/."""
from pathlib import Path

import numpy as np

from skewjacobi.forms_io import save_form
from skewjacobi.isomorphism import full_iso_plus_to_jacobi
from skewjacobi.samples import (
    cohen_eisenstein,
    random_plus_form,
    random_skew_jacobi,
    theta_components,
    theta_jacobi_table,
    theta_vector,
)
from skewjacobi.isomorphism import components_to_scalar
from skewjacobi.spaces import Space

OUT = Path(__file__).resolve().parents[1] / "src" / "skewjacobi" / "data" / "forms"


def corpus() -> dict:
    cohen = cohen_eisenstein(100)
    return {
        "theta_1_0.json": theta_jacobi_table(1, 0),
        "theta_1_1.json": theta_jacobi_table(1, 1),
        "theta_2_0.json": theta_jacobi_table(2, 0),
        "theta_vector_1.json": theta_vector(1, 20),
        "theta_vector_2.json": theta_vector(2, 20),
        "theta_components_3.json": theta_components(3, 20),
        "theta_scalar_4.json": components_to_scalar(theta_components(1, 20)),
        "cohen_eisenstein_5_2.json": cohen,
        "cohen_skew_jacobi_3_1.json": full_iso_plus_to_jacobi(cohen, 3, 1),
        "cusp_random_3_1.json": random_skew_jacobi(np.random.default_rng(1), 3, 1, Space.HARMONIC, nkeys=8),
        "cusp_random_5_3.json": random_skew_jacobi(np.random.default_rng(2), 5, 3, Space.HARMONIC, nkeys=10),
        "plus_random_7_5.json": random_plus_form(np.random.default_rng(3), 7, 5, Space.MANAGEABLE, nkeys=10),
    }


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    for name, form in corpus().items():
        save_form(form, OUT / name)
        print(name)


if __name__ == "__main__":
    main()
