"""
Gluing two LCK potentials
=========================

The sign-indefinite potential ``phi`` is glued to a small multiple of the
section potential ``sqrt(|z1^2|^2 + |z1 z2|^2 + |z2^2|^2) / |z|^2``. The
glued field is ``phi`` where ``phi`` is clearly larger and the section
potential where it is clearly larger.
"""

import numpy as np

from lckpot import GlueSpec, HopfModel, check_glue_hypotheses, glue, parse_field, section_potential, verify_glue
from lckpot.plots import heatmap_svg

model = HopfModel(2, 2.0)
phi = parse_field("1 + 3*Re(z1*z2)/|z|^2", 2)
psi = 0.1 * section_potential(model)

spec = GlueSpec(phi, psi, model.lee, eps=0.02, sampler=model.annulus(10_000))
hyp = check_glue_hypotheses(spec)
print("surface points:", hyp.surface_points, "min normal-derivative margin:", hyp.min_margin)

g = glue(spec)
report = verify_glue(g, spec)
print("fidelity on D+ / D-:", report.fidelity_plus, report.fidelity_minus)
print("glued verdict:", report.verdict)

# a psi with a degenerate direction: the glued form is only semidefinite
weak = parse_field("|z1|^2/|z|^2", 2)
wspec = GlueSpec(phi, weak, model.lee, 0.02, model.annulus(10_000))
wreport = verify_glue(glue(wspec, override=True), wspec)
print("weak case:", wreport.verdict, "non-strict points, all in psi region:",
      wreport.strict_failures_in_psi_region, "/", wreport.strict_failures_total)

heatmap_svg("gluing.svg", [("phi", phi, model.lee), ("glued", g, model.lee)], n=2, extent=2.0)
