//! Golden corpus: one runnable job per worked example, with frozen expectations.

use serde::Serialize;
use serde_json::{json, Value};

use crate::run::run_text;

/// An expectation on the output document, addressed by JSON pointer.
#[derive(Clone, Copy, Debug)]
pub enum Check {
    /// Equal to the JSON literal; arrays of strings compare as sets.
    Eq(&'static str, &'static str),
    /// Array of the given length.
    Len(&'static str, usize),
}

#[derive(Clone, Copy, Debug)]
pub struct Entry {
    pub name: &'static str,
    pub job: &'static str,
    pub checks: &'static [Check],
}

use Check::{Eq, Len};

const OK: Check = Eq("/status", "\"ok\"");

pub const ENTRIES: &[Entry] = &[
    // Polynomial arithmetic and division.
    Entry {
        name: "algebra_core.expand_cancellation",
        job: "ring R = QQ[x, y];\nrun expand (x + y) + (x - y) in R;\n",
        checks: &[OK, Eq("/result/poly", "\"2*x\"")],
    },
    Entry {
        name: "algebra_core.expand_difference_of_squares",
        job: "ring R = QQ[x, y];\nrun expand (x + y)*(x - y) in R;\n",
        checks: &[OK, Eq("/result/poly", "\"x^2 - y^2\"")],
    },
    Entry {
        name: "algebra_core.expand_times_zero",
        job: "ring R = QQ[x, y, z];\nrun expand (x^3*y - 7*y*z^2 + 2/3)*0 in R;\n",
        checks: &[OK, Eq("/result/poly", "\"0\"")],
    },
    Entry {
        name: "algebra_core.normal_form_lex_division",
        job: "ring R = QQ[x, y] lex;\nideal G = (x^2 - y) in R;\nrun normal_form x^2*y mod G;\n",
        checks: &[OK, Eq("/result/poly", "\"y^2\"")],
    },
    Entry {
        name: "algebra_core.normal_form_of_generator",
        job: "ring R = QQ[x, y] lex;\nideal G = (x^2 - y, x*y - 1) in R;\nrun normal_form x*y - 1 mod G;\n",
        checks: &[OK, Eq("/result/poly", "\"0\"")],
    },
    Entry {
        name: "algebra_core.normal_form_constant",
        job: "ring R = QQ[x];\nideal G = (x) in R;\nrun normal_form 1 mod G;\n",
        checks: &[OK, Eq("/result/poly", "\"1\"")],
    },
    Entry {
        name: "algebra_core.groebner_twisted_cubic",
        job: "ring R = QQ[x, y, z] lex;\nideal I = (x^2 - y, x^3 - z) in R;\nrun groebner I;\n",
        checks: &[OK, Eq("/result/gb", r#"["x^2 - y", "x*y - z", "x*z - y^2", "y^3 - z^2"]"#)],
    },
    Entry {
        name: "algebra_core.groebner_redundant_generator",
        job: "ring R = QQ[x];\nideal I = (x, x^2) in R;\nrun groebner I;\n",
        checks: &[OK, Eq("/result/gb", r#"["x"]"#)],
    },
    Entry {
        name: "algebra_core.groebner_monic",
        job: "ring R = QQ[x, y];\nideal I = (2*x + 2*y) in R;\nrun groebner I;\n",
        checks: &[OK, Eq("/result/gb", r#"["x + y"]"#)],
    },
    // Ideal operations.
    Entry {
        name: "ideal_ops.member_cusp_relation",
        job: "ring R = QQ[x, y, z] lex;\nideal I = (x^2 - y, x^3 - z) in R;\nrun member y^3 - z^2 in I;\n",
        checks: &[OK, Eq("/result/value", "true")],
    },
    Entry {
        name: "ideal_ops.member_one",
        job: "ring R = QQ[x];\nideal I = (x) in R;\nrun member 1 in I;\n",
        checks: &[OK, Eq("/result/value", "false")],
    },
    Entry {
        name: "ideal_ops.member_zero",
        job: "ring R = QQ[x, y];\nideal I = (x^2 + y^3 - 1) in R;\nrun member 0 in I;\n",
        checks: &[OK, Eq("/result/value", "true")],
    },
    Entry {
        name: "ideal_ops.equal_change_of_generators",
        job: "ring R = QQ[x, y];\nideal I = (x, y) in R;\nideal J = (x + y, y) in R;\nrun equal I J;\n",
        checks: &[OK, Eq("/result/value", "true")],
    },
    Entry {
        name: "ideal_ops.equal_square",
        job: "ring R = QQ[x];\nideal I = (x^2) in R;\nideal J = (x) in R;\nrun equal I J;\n",
        checks: &[OK, Eq("/result/value", "false")],
    },
    Entry {
        name: "ideal_ops.equal_product",
        job: "ring R = QQ[x, y];\nideal Y = (y) in R;\nideal M = (x, y) in R;\nrun multiply Y M;\n",
        checks: &[OK, Eq("/result/gb", r#"["x*y", "y^2"]"#)],
    },
    Entry {
        name: "ideal_ops.eliminate_cusp",
        job: "ring R = QQ[x, y, z];\nideal I = (y - x^2, z - x^3) in R;\nrun eliminate I keep (y, z);\n",
        checks: &[OK, Eq("/result/gb", r#"["y^3 - z^2"]"#), Eq("/result/vars", r#"["y", "z"]"#)],
    },
    Entry {
        name: "ideal_ops.eliminate_to_zero",
        job: "ring R = QQ[x, y];\nideal I = (x) in R;\nrun eliminate I keep (y);\n",
        checks: &[OK, Eq("/result/gb", "[]"), Eq("/result/vars", r#"["y"]"#)],
    },
    Entry {
        name: "ideal_ops.eliminate_all_variables",
        job: "ring R = QQ[x];\nideal I = (x - 1) in R;\nrun eliminate I keep ();\n",
        checks: &[OK, Eq("/result/gb", "[]"), Eq("/result/unit", "false")],
    },
    Entry {
        name: "ideal_ops.quotient_by_coordinate",
        job: "ring R = QQ[x, y];\nideal I = (x*y) in R;\nrun quotient I by x;\n",
        checks: &[OK, Eq("/result/gb", r#"["y"]"#)],
    },
    Entry {
        name: "ideal_ops.quotient_embedded",
        job: "ring R = QQ[x, y];\nideal I = (x^2, x*y) in R;\nrun quotient I by x;\n",
        checks: &[OK, Eq("/result/gb", r#"["x", "y"]"#)],
    },
    Entry {
        name: "ideal_ops.quotient_by_one",
        job: "ring R = QQ[x, y];\nideal I = (x^2, x*y) in R;\nrun quotient I by 1;\n",
        checks: &[OK, Eq("/result/gb", r#"["x^2", "x*y"]"#)],
    },
    Entry {
        name: "ideal_ops.saturate_node",
        job: "ring R = QQ[x, y] grevlex;\nideal I = (x*y) in R;\nrun saturate I by x;\n",
        checks: &[OK, Eq("/result/gb", r#"["y"]"#)],
    },
    Entry {
        name: "ideal_ops.saturate_embedded_point",
        job: "ring R = QQ[x, y];\nideal I = (y^2, x*y) in R;\nrun saturate I by x;\n",
        checks: &[OK, Eq("/result/gb", r#"["y"]"#)],
    },
    Entry {
        name: "ideal_ops.saturate_by_nonzerodivisor",
        job: "ring R = QQ[x, y];\nideal I = (x^2 - y) in R;\nrun saturate I by x;\n",
        checks: &[OK, Eq("/result/gb", r#"["x^2 - y"]"#)],
    },
    Entry {
        name: "ideal_ops.intersect_axes",
        job: "ring R = QQ[x, y];\nideal I = (x) in R;\nideal J = (y) in R;\nrun intersect I, J;\n",
        checks: &[OK, Eq("/result/gb", r#"["x*y"]"#)],
    },
    Entry {
        name: "ideal_ops.intersect_line_and_fat_point",
        job: "ring R = QQ[x, y];\nideal WE = (x, y^2, x*y) in R;\nideal WP = (y, y^2, x*y) in R;\nrun intersect WE, WP;\n",
        checks: &[OK, Eq("/result/gb", r#"["x*y", "y^2"]"#)],
    },
    Entry {
        name: "ideal_ops.intersect_unit",
        job: "ring R = QQ[x, y];\nideal I = (x*y, x^3 - y) in R;\nideal U = (1) in R;\nrun intersect I, U;\n",
        checks: &[OK, Eq("/result/gb", r#"["x*y", "x^3 - y", "y^2"]"#)],
    },
    Entry {
        name: "ideal_ops.kernel_cusp",
        job: "ring R = QQ[x, y];\nring S = QQ[t];\nmap f : R -> S = (t^2, t^3);\nrun kernel f;\n",
        checks: &[OK, Eq("/result/gb", r#"["x^3 - y^2"]"#)],
    },
    Entry {
        name: "ideal_ops.kernel_identity",
        job: "ring R = QQ[x, y];\nmap f : R -> R = (x, y);\nrun kernel f;\n",
        checks: &[OK, Eq("/result/gb", "[]")],
    },
    Entry {
        name: "ideal_ops.kernel_dual_numbers",
        job: "ring R = QQ[x];\nring S0 = QQ[t];\nring S = S0 / (t^2);\nmap f : R -> S = (t);\nrun kernel f;\n",
        checks: &[OK, Eq("/result/gb", r#"["x^2"]"#)],
    },
    Entry {
        name: "ideal_ops.coefficient_ideal_difference",
        job: "ring R = QQ[c, a, b];\nideal I = (c*(a - b)) in R;\nrun coefficient_ideal I fibre (a, b);\n",
        checks: &[OK, Eq("/result/gb", r#"["c"]"#)],
    },
    Entry {
        name: "ideal_ops.coefficient_ideal_constant",
        job: "ring R = QQ[c, a];\nideal I = (c) in R;\nrun coefficient_ideal I fibre (a);\n",
        checks: &[OK, Eq("/result/gb", r#"["c"]"#)],
    },
    Entry {
        name: "ideal_ops.coefficient_ideal_mixed",
        job: "ring R = QQ[c, a];\nideal I = (c*a, c^2) in R;\nrun coefficient_ideal I fibre (a);\n",
        checks: &[OK, Eq("/result/gb", r#"["c"]"#)],
    },
    Entry {
        name: "ideal_ops.regular_zero_divisor",
        job: "ring R = QQ[x, y];\nring X = R / (x*y);\nrun regular x in X;\n",
        checks: &[OK, Eq("/result/value", "false")],
    },
    Entry {
        name: "ideal_ops.regular_in_domain",
        job: "ring R = QQ[x, y];\nrun regular x in R;\n",
        checks: &[OK, Eq("/result/value", "true")],
    },
    Entry {
        name: "ideal_ops.regular_sum_on_node",
        job: "ring R = QQ[x, y];\nring X = R / (x*y);\nrun regular x + y in X;\n",
        checks: &[OK, Eq("/result/value", "true")],
    },
    Entry {
        name: "ideal_ops.principal_cartier",
        job: "ring R = QQ[x, y];\nideal I = (x) in R;\nrun principal I;\n",
        checks: &[OK, Eq("/result/status", "\"cartier\""), Eq("/result/generator", "\"x\"")],
    },
    Entry {
        name: "ideal_ops.principal_not_cartier",
        job: "ring R = QQ[x, y];\nring X = R / (x*y);\nideal I = (x) in X;\nrun principal I;\n",
        checks: &[OK, Eq("/result/status", "\"principal_not_cartier\""), Eq("/result/generator", "\"x\"")],
    },
    Entry {
        name: "ideal_ops.principal_unit",
        job: "ring R = QQ[x, y];\nideal I = (1) in R;\nrun principal I;\n",
        checks: &[OK, Eq("/result/status", "\"full\"")],
    },
    // Affine schemes and morphisms.
    Entry {
        name: "scheme.product_of_lines",
        job: "ring A = QQ[a];\nring C = QQ[c];\nrun product A C;\n",
        checks: &[
            OK,
            Eq("/result/product/vars", r#"["a", "c"]"#),
            Eq("/result/product/relations", "[]"),
            Eq("/result/first/images", r#"["a"]"#),
            Eq("/result/second/images", r#"["c"]"#),
        ],
    },
    Entry {
        name: "scheme.product_extension_of_scalars",
        job: "ring R = QQ[x, y];\nring X = R / (x*y);\nring T = QQ[t];\nrun product X T;\n",
        checks: &[OK, Eq("/result/product/vars", r#"["x", "y", "t"]"#), Eq("/result/product/relations", r#"["x*y"]"#)],
    },
    Entry {
        name: "scheme.fibre_product_diagonal",
        job: "ring R = QQ[x, y];\nring V = R / (x - y);\nring L = QQ[s];\nmap p : L -> V = (x);\nrun fibre_product p p;\n",
        checks: &[
            OK,
            Eq("/result/product/vars", r#"["x", "y", "x_p", "y_p"]"#),
            Eq("/result/product/relations", r#"["x - y_p", "y - y_p", "x_p - y_p"]"#),
        ],
    },
    Entry {
        name: "scheme.image_cusp",
        job: "ring R = QQ[x, y];\nring S = QQ[t];\nmap f : R -> S = (t^2, t^3);\nrun image f;\n",
        checks: &[OK, Eq("/result/gb", r#"["x^3 - y^2"]"#)],
    },
    Entry {
        name: "scheme.image_closed_embedding",
        job: "ring R = QQ[x, y];\nring C = R / (y - x^2);\nmap g : R -> C = (x, y);\nrun image g;\n",
        checks: &[OK, Eq("/result/gb", r#"["x^2 - y"]"#)],
    },
    Entry {
        name: "scheme.image_fat_point",
        job: "ring A = QQ[x];\nring S0 = QQ[t];\nring S = S0 / (t^2);\nmap f : A -> S = (t);\nrun image f;\n",
        checks: &[OK, Eq("/result/gb", r#"["x^2"]"#)],
    },
    Entry {
        name: "scheme.image_extension_cusp",
        job: "ring R = QQ[x, y];\nring S = QQ[t];\nmap f : R -> S = (t^2, t^3);\nrun image_extension f adjoin (w);\n",
        checks: &[OK, Eq("/result/value", "true"), Eq("/result/image/gb", r#"["x^3 - y^2"]"#)],
    },
    Entry {
        name: "scheme.image_extension_identity",
        job: "ring R = QQ[x, y];\nmap f : R -> R = (x, y);\nrun image_extension f adjoin (w, v);\n",
        checks: &[OK, Eq("/result/value", "true"), Eq("/result/image/gb", "[]")],
    },
    Entry {
        name: "scheme.image_extension_open_piece",
        job: "ring R = QQ[x, y];\nring X = R / (x*y);\nring R1 = QQ[x, y, r];\nring D = R1 / (x*y, x*r - 1);\nmap j : X -> D = (x, y);\nrun image_extension j adjoin (w);\n",
        checks: &[OK, Eq("/result/value", "true"), Eq("/result/image/gb", r#"["y"]"#)],
    },
    Entry {
        name: "scheme.constant_projection",
        job: "ring X = QQ[c, a];\nring P = QQ[c];\nring F = QQ[s];\nmap p : P -> X = (c);\nmap f : F -> X = (c);\nrun constant f over p;\n",
        checks: &[OK, Eq("/result/value", "true"), Eq("/result/descent", r#"["c"]"#)],
    },
    Entry {
        name: "scheme.constant_fails_on_product",
        job: "ring X = QQ[c, a];\nring P = QQ[c];\nring F = QQ[s];\nmap p : P -> X = (c);\nmap f : F -> X = (c*a);\nrun constant f over p;\n",
        checks: &[OK, Eq("/result/value", "false")],
    },
    Entry {
        name: "scheme.constant_over_zero_fibre",
        job: "ring X0 = QQ[c, a];\nring X = X0 / (c);\nring P = QQ[c];\nring F = QQ[s];\nmap p : P -> X = (c);\nmap f : F -> X = (c*a);\nrun constant f over p;\n",
        checks: &[OK, Eq("/result/value", "true"), Eq("/result/descent", r#"["0"]"#)],
    },
    // Blow-ups.
    Entry {
        name: "blowup.saturation_node",
        job: "ring R = QQ[x, y];\nring X = R / (x*y);\nrun blowup_principal X at x;\n",
        checks: &[OK, Eq("/result/result/gb", r#"["y"]"#), Eq("/result/shaved", r#"["y"]"#), Eq("/result/empty", "false")],
    },
    Entry {
        name: "blowup.saturation_embedded_point",
        job: "ring R = QQ[x, y];\nring X = R / (y^2, x*y);\nrun blowup_principal X at x;\n",
        checks: &[OK, Eq("/result/result/gb", r#"["y"]"#), Eq("/result/shaved", r#"["y"]"#)],
    },
    Entry {
        name: "blowup.saturation_cartier_center",
        job: "ring X = QQ[x, y];\nrun blowup_principal X at x;\n",
        checks: &[OK, Eq("/result/result/gb", "[]"), Eq("/result/shaved", "[]")],
    },
    Entry {
        name: "blowup.rees_origin",
        job: "ring R = QQ[x, y];\nideal M = (x, y) in R;\nrun blowup M;\n",
        checks: &[
            OK,
            Len("/result/charts", 2),
            Eq("/result/charts/0/chart/relations", r#"["x*t1 - y"]"#),
            Eq("/result/charts/0/exceptional", "\"x\""),
            Eq("/result/charts/0/certificate", "\"cartier\""),
            Eq("/result/charts/1/chart/relations", r#"["y*t0 - x"]"#),
            Eq("/result/charts/1/exceptional", "\"y\""),
            Eq("/result/charts/1/certificate", "\"cartier\""),
        ],
    },
    Entry {
        name: "blowup.rees_cartier_center",
        job: "ring R = QQ[x, y];\nideal I = (x^2 + y) in R;\nrun blowup I;\n",
        checks: &[OK, Len("/result/charts", 1), Eq("/result/charts/0/chart/relations", "[]")],
    },
    Entry {
        name: "blowup.rees_graph_center",
        job: "ring C = QQ[x, y, z, v];\nideal I = (z, v*x - y) in C;\nrun blowup I;\n",
        checks: &[
            OK,
            Len("/result/charts", 2),
            Eq("/result/charts/0/exceptional", "\"z\""),
            Eq("/result/charts/1/exceptional", "\"x*v - y\""),
        ],
    },
    Entry {
        name: "blowup.closure_of_open_complement_is_empty",
        job: "ring R = QQ[x, y];\nideal W = (y^2, x*y) in R;\nrun saturate W by y;\n",
        checks: &[OK, Eq("/result/gb", r#"["1"]"#), Eq("/result/unit", "true")],
    },
    Entry {
        name: "blowup.product_form_node",
        job: "ring R = QQ[x, y];\nring X = R / (x*y);\nrun product_form X adjoin (t) center x;\n",
        checks: &[OK, Eq("/result/w/gb", r#"["y"]"#)],
    },
    Entry {
        name: "blowup.product_form_regular",
        job: "ring X = QQ[x];\nrun product_form X adjoin (t) center x;\n",
        checks: &[OK, Eq("/result/w/gb", "[]")],
    },
    Entry {
        name: "blowup.product_form_violated",
        job: "algebra B dim 2;\ne2*e2 = 1;\nring X = QQ[x];\nrun product_form_over X over B center (e2 - 1)*x;\n",
        checks: &[Eq("/status", "\"error\""), Eq("/error/code", "\"math\""), Eq("/error/tag", "\"product form violated\"")],
    },
    // Weil restriction.
    Entry {
        name: "weil.restrict_dual_numbers",
        job: "algebra E dim 2;\ne2*e2 = 0;\nring X0 = QQ[x, e2];\nring X = X0 / (x^2 - 3 - 5*e2);\nrun restrict X over E;\n",
        checks: &[OK, Eq("/result/equations", r#"["x_0^2 - 3", "2*x_0*x_1 - 5"]"#)],
    },
    Entry {
        name: "weil.restrict_trivial_algebra",
        job: "algebra Q dim 1;\nring X0 = QQ[x];\nring X = X0 / (x^2 - 2);\nrun restrict X over Q;\n",
        checks: &[OK, Eq("/result/equations", r#"["x^2 - 2"]"#)],
    },
    Entry {
        name: "weil.restrict_split_algebra",
        job: "algebra S dim 2;\ne2*e2 = e2;\nring X0 = QQ[x];\nring X = X0 / (x^2 - 2);\nrun restrict X over S;\n",
        checks: &[OK, Eq("/result/equations", r#"["x_0^2 - 2", "2*x_0*x_1 + x_1^2"]"#)],
    },
    Entry {
        name: "weil.restrict_map_square",
        job: "algebra E dim 2;\ne2*e2 = 0;\nring A = QQ[x];\nmap g : A -> A = (x^2);\nrun restrict_map g over E;\n",
        checks: &[OK, Eq("/result/map/images", r#"["x_0^2", "2*x_0*x_1"]"#)],
    },
    Entry {
        name: "weil.restrict_map_identity",
        job: "algebra E dim 2;\ne2*e2 = 0;\nring A = QQ[x];\nmap g : A -> A = (x);\nrun restrict_map g over E;\n",
        checks: &[OK, Eq("/result/map/images", r#"["x_0", "x_1"]"#)],
    },
    Entry {
        name: "weil.restrict_map_constant",
        job: "algebra E dim 2;\ne2*e2 = 0;\nring A = QQ[x];\nmap g : A -> A = (3);\nrun restrict_map g over E;\n",
        checks: &[OK, Eq("/result/map/images", r#"["3", "0"]"#)],
    },
    Entry {
        name: "weil.adjunction_square_roots_of_one",
        job: "algebra E dim 2;\ne2*e2 = 0;\nring X0 = QQ[x];\nring X = X0 / (x^2 - 1);\nring T0 = QQ[s];\nring T = T0 / (s);\nrun adjunction X over E test T;\n",
        checks: &[OK, Eq("/result/report/verdict", "\"bijection\""), Eq("/result/report/restricted_points", "2"), Eq("/result/report/algebra_points", "2")],
    },
    Entry {
        name: "weil.adjunction_empty_test_scheme",
        job: "algebra E dim 2;\ne2*e2 = 0;\nring X0 = QQ[x];\nring X = X0 / (x^2 - 1);\nring T0 = QQ[s];\nring T = T0 / (1);\nrun adjunction X over E test T;\n",
        checks: &[OK, Eq("/result/report/verdict", "\"bijection\""), Eq("/result/report/restricted_points", "1"), Eq("/result/report/algebra_points", "1")],
    },
    Entry {
        name: "weil.adjunction_zero_section",
        job: "algebra E dim 3;\ne2*e2 = e3;\ne2*e3 = 0;\ne3*e3 = 0;\nring X0 = QQ[x];\nring X = X0 / (x);\nring T0 = QQ[s];\nring T = T0 / (s);\nrun adjunction X over E test T;\n",
        checks: &[OK, Eq("/result/report/verdict", "\"bijection\""), Eq("/result/report/restricted_points", "1"), Eq("/result/report/algebra_points", "1")],
    },
    // Iso and constfy loci, strata.
    Entry {
        name: "family.iso_locus_constant_equation",
        job: "ring X = QQ[c, a];\nideal Z = (c) in X;\nrun iso_locus Z fibre (a);\n",
        checks: &[OK, Eq("/result/locus/gb", r#"["c"]"#), Eq("/result/base/vars", r#"["c"]"#)],
    },
    Entry {
        name: "family.iso_locus_mixed",
        job: "ring X = QQ[c, a];\nideal Z = (c*a, c^2) in X;\nrun iso_locus Z fibre (a);\n",
        checks: &[OK, Eq("/result/locus/gb", r#"["c"]"#)],
    },
    Entry {
        name: "family.iso_locus_section",
        job: "ring X = QQ[c, a];\nideal Z = (a, c) in X;\nrun iso_locus Z fibre (a);\n",
        checks: &[OK, Eq("/result/locus/gb", r#"["1"]"#), Eq("/result/empty", "true")],
    },
    Entry {
        name: "family.constfy_product",
        job: "ring X = QQ[c, a];\nring F = QQ[s];\nmap f : F -> X = (c*a);\nrun constfy f fibre (a);\n",
        checks: &[OK, Eq("/result/locus/gb", r#"["c"]"#), Eq("/result/descended/images", r#"["0"]"#)],
    },
    Entry {
        name: "family.constfy_already_constant",
        job: "ring X = QQ[c, a];\nring F = QQ[s];\nmap f : F -> X = (c);\nrun constfy f fibre (a);\n",
        checks: &[OK, Eq("/result/locus/gb", "[]"), Eq("/result/descended/images", r#"["c"]"#)],
    },
    Entry {
        name: "family.constfy_fibre_coordinate",
        job: "ring X = QQ[c, a];\nring F = QQ[s];\nmap f : F -> X = (a);\nrun constfy f fibre (a);\n",
        checks: &[OK, Eq("/result/locus/gb", r#"["1"]"#), Eq("/result/empty", "true")],
    },
    Entry {
        name: "family.strata_graph_chart_x",
        job: "ring C = QQ[y, z, u, v];\nideal Z = (z, v - u*y) in C;\nrun strata Z fibre (u, v);\n",
        checks: &[
            OK,
            Len("/result/strata", 2),
            Eq("/result/strata/0/label", "\"empty\""),
            Eq("/result/strata/1/label", "\"1\""),
            Eq("/result/strata/1/closed", r#"["z"]"#),
            Eq("/result/core_empty", "true"),
        ],
    },
    Entry {
        name: "family.strata_graph_chart_y",
        job: "ring C = QQ[x, z, u, v];\nideal Z = (z, v*x - u) in C;\nrun strata Z fibre (u, v);\n",
        checks: &[
            OK,
            Len("/result/strata", 2),
            Eq("/result/strata/0/label", "\"empty\""),
            Eq("/result/strata/1/label", "\"1\""),
            Eq("/result/strata/1/closed", r#"["z"]"#),
            Eq("/result/core_empty", "true"),
        ],
    },
    Entry {
        name: "family.strata_graph_chart_z",
        job: "ring C = QQ[x, y, u, v];\nideal Z = (1) in C;\nrun strata Z fibre (u, v);\n",
        checks: &[OK, Len("/result/strata", 1), Eq("/result/strata/0/label", "\"empty\""), Eq("/result/core_empty", "true")],
    },
    Entry {
        name: "family.strata_constant_section",
        job: "ring X = QQ[c, a];\nideal Z = (a) in X;\nrun strata Z fibre (a);\n",
        checks: &[OK, Len("/result/strata", 1), Eq("/result/strata/0/label", "\"1\""), Eq("/result/core_empty", "true")],
    },
    Entry {
        name: "family.strata_determinantal",
        job: "ring D0 = QQ[x, y, z, w, a, b];\nring D = D0 / (x*w - y*z);\nideal Z = (x*a + y*b, z*a + w*b) in D;\nrun strata Z fibre (a, b);\n",
        checks: &[OK, Eq("/result/core", r#"["w", "x", "y", "z"]"#), Eq("/result/core_empty", "false")],
    },
    // Blow-up section families.
    Entry {
        name: "bsf.product_center_dual_numbers",
        job: "ring X = QQ[x, y];\nalgebra B dim 2;\ne2*e2 = 0;\nring P = QQ[x, y, e2];\nideal Z = (x, y) in P;\nrun bsf X over B center Z;\n",
        checks: &[
            OK,
            Eq("/result/route", "\"pipeline\""),
            Len("/result/components", 1),
            Len("/result/components/0/charts", 2),
            Eq("/result/components/0/charts/0/chart/relations", r#"["x_0*t1_0 - y_0", "x_1", "y_1", "t1_1"]"#),
            Eq("/result/components/0/charts/0/exceptional", "\"x_0\""),
            Eq("/result/components/0/charts/1/chart/relations", r#"["y_0*t0_0 - x_0", "x_1", "y_1", "t0_1"]"#),
            Eq("/result/components/0/charts/1/exceptional", "\"y_0\""),
            Eq("/result/core/0/gb", r#"["x", "y"]"#),
        ],
    },
    Entry {
        name: "bsf.product_center_rationals",
        job: "ring X = QQ[x, y];\nalgebra B dim 1;\nideal Z = (x, y) in X;\nrun bsf X over B center Z;\n",
        checks: &[OK, Len("/result/components", 1), Len("/result/components/0/charts", 2)],
    },
    Entry {
        name: "bsf.product_center_split",
        job: "ring X = QQ[x, y];\nalgebra B dim 2;\ne2*e2 = e2;\nring P = QQ[x, y, e2];\nideal Z = (x, y) in P;\nrun bsf X over B center Z;\n",
        checks: &[OK, Len("/result/components", 1), Len("/result/components/0/charts", 2)],
    },
    Entry {
        name: "bsf.empty_center",
        job: "ring X = QQ[x, y];\nalgebra B dim 2;\ne2*e2 = 0;\nring P = QQ[x, y, e2];\nideal Z = (1) in P;\nrun bsf X over B center Z;\n",
        checks: &[OK, Len("/result/components", 1), Len("/result/components/0/charts", 1), Eq("/result/components/0/charts/0/map/images", r#"["x", "y"]"#)],
    },
    Entry {
        name: "bsf.whole_center",
        job: "ring X = QQ[x, y];\nalgebra B dim 2;\ne2*e2 = 0;\nring P = QQ[x, y, e2];\nideal Z = (0) in P;\nrun bsf X over B center Z;\n",
        checks: &[OK, Len("/result/components", 0), Eq("/result/core/0/gb", "[]")],
    },
    Entry {
        name: "bsf.structure_graph",
        job: "ring CX = QQ[y, z, u, v];\nring CY = QQ[x, z, u, v];\nring CZ = QQ[x, y, u, v];\nideal P2_x = (z, v - u*y) in CX;\nideal P2_y = (z, v*x - u) in CY;\nideal P2_z = (1) in CZ;\nrun bsf_structure P2_x, P2_y, P2_z fibre (u, v);\n",
        checks: &[
            OK,
            Eq("/result/route", "\"structure\""),
            Len("/result/components", 2),
            Eq("/result/partial", "false"),
            Eq("/result/components/0/label", "\"empty\""),
            Len("/result/components/0/charts", 3),
            Eq("/result/components/1/label", "\"1\""),
            Len("/result/components/1/charts", 2),
            Eq("/result/components/1/charts/0/chart/relations", r#"["z"]"#),
            Eq("/result/components/1/charts/1/chart/relations", r#"["z"]"#),
            Eq("/result/core/0/empty", "true"),
            Eq("/result/core/1/empty", "true"),
            Eq("/result/core/2/empty", "true"),
        ],
    },
    Entry {
        name: "bsf.structure_determinantal",
        job: "ring D0 = QQ[x, y, z, w, a, b];\nring D = D0 / (x*w - y*z);\nideal Z = (x*a + y*b, z*a + w*b) in D;\nrun bsf_structure Z fibre (a, b);\n",
        checks: &[OK, Eq("/result/partial", "true"), Eq("/result/core/0/gb", r#"["w", "x", "y", "z"]"#), Len("/result/components", 1)],
    },
    Entry {
        name: "bsf.structure_constant_section",
        job: "ring X = QQ[c, a];\nideal Z = (a) in X;\nrun bsf_structure Z fibre (a);\n",
        checks: &[OK, Len("/result/components", 1), Eq("/result/partial", "false"), Eq("/result/core/0/empty", "true")],
    },
    Entry {
        name: "bsf.small_resolution_chart_match",
        job: "run small_resolution;\n",
        checks: &[OK, Eq("/result/checks/0/passed", "true"), Eq("/result/checks/1/passed", "true"), Eq("/result/checks/2/passed", "true")],
    },
    Entry {
        name: "bsf.small_resolution_first_order",
        job: "run small_resolution;\n",
        checks: &[OK, Eq("/result/checks/3/passed", "true"), Eq("/result/checks/4/passed", "true")],
    },
    Entry {
        name: "bsf.small_resolution_constants",
        job: "run small_resolution;\n",
        checks: &[OK, Eq("/result/checks/5/passed", "true"), Eq("/result/checks/6/passed", "true"), Eq("/result/checks/7/passed", "true")],
    },
    // Command-line behaviour.
    Entry {
        name: "cli.saturate_job",
        job: "ring R = QQ[x, y] grevlex;\nideal I = (x*y) in R;\nrun saturate I by x;\n",
        checks: &[OK, Eq("/command", "\"saturate\""), Eq("/result/gb", r#"["y"]"#)],
    },
    Entry {
        name: "cli.missing_semicolon",
        job: "ring R = QQ[x, y] grevlex\nideal I = (x*y) in R;\nrun saturate I by x;\n",
        checks: &[Eq("/status", "\"error\""), Eq("/error/code", "\"E001\""), Eq("/error/line", "2"), Eq("/error/col", "1")],
    },
    Entry {
        name: "cli.undeclared_name",
        job: "ring R = QQ[x, y];\nrun saturate I by x;\n",
        checks: &[Eq("/status", "\"error\""), Eq("/error/code", "\"E002\""), Eq("/error/line", "2"), Eq("/error/col", "14")],
    },
    Entry {
        name: "cli.arity_mismatch",
        job: "ring R = QQ[x, y];\nideal I = (x*y) in R;\nrun saturate I;\n",
        checks: &[Eq("/status", "\"error\""), Eq("/error/code", "\"E003\"")],
    },
    Entry {
        name: "cli.bsf_grammar",
        job: "ring X = QQ[x];\nalgebra B dim 1;\nideal Z = (x) in X;\nrun bsf X over B center Z;\n",
        checks: &[OK, Eq("/command", "\"bsf\""), Eq("/result/route", "\"pipeline\"")],
    },
    Entry {
        name: "cli.json_round_trip",
        job: "ring R = QQ[x, y, z] lex;\nideal I = (x^2 - y, x^3 - z) in R;\nrun groebner I;\n",
        checks: &[OK, Eq("/schema", "1")],
    },
];

pub fn find(name: &str) -> Option<&'static Entry> {
    ENTRIES.iter().find(|e| e.name == name)
}

fn as_string_set(v: &Value) -> Option<Vec<&str>> {
    let mut out = v.as_array()?.iter().map(Value::as_str).collect::<Option<Vec<_>>>()?;
    out.sort_unstable();
    Some(out)
}

fn matches(got: &Value, want: &Value) -> bool {
    match (as_string_set(got), as_string_set(want)) {
        (Some(a), Some(b)) => a == b,
        _ => got == want,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryReport {
    pub name: String,
    pub passed: bool,
    pub exit: i32,
    pub failures: Vec<String>,
    pub output: Value,
}

/// Run one entry; every output must also survive a print/parse round trip.
pub fn run_entry(e: &Entry) -> EntryReport {
    let out = run_text(e.job);
    let mut failures = Vec::new();
    for c in e.checks {
        match *c {
            Check::Eq(ptr, lit) => {
                let want: Value = serde_json::from_str(lit).expect("corpus literal is JSON");
                match out.doc.pointer(ptr) {
                    Some(got) if matches(got, &want) => {}
                    Some(got) => failures.push(format!("{ptr}: expected {want}, got {got}")),
                    None => failures.push(format!("{ptr}: missing")),
                }
            }
            Check::Len(ptr, n) => match out.doc.pointer(ptr).and_then(Value::as_array) {
                Some(a) if a.len() == n => {}
                Some(a) => failures.push(format!("{ptr}: expected {n} items, got {}", a.len())),
                None => failures.push(format!("{ptr}: missing")),
            },
        }
    }
    let printed = serde_json::to_string(&out.doc).expect("serializable");
    match serde_json::from_str::<Value>(&printed) {
        Ok(back) if back == out.doc => {}
        _ => failures.push("JSON output does not round-trip".into()),
    }
    EntryReport { name: e.name.into(), passed: failures.is_empty(), exit: out.exit, failures, output: out.doc }
}

/// Run entries on worker threads; reports come back sorted by name.
pub fn run_entries(entries: &[&'static Entry]) -> Vec<EntryReport> {
    let workers = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1).min(8);
    let next = std::sync::atomic::AtomicUsize::new(0);
    let mut reports: Vec<EntryReport> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|_| {
                s.spawn(|| {
                    let mut mine = Vec::new();
                    loop {
                        let k = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                        let Some(e) = entries.get(k) else { break };
                        mine.push(run_entry(e));
                    }
                    mine
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("corpus worker panicked")).collect()
    });
    reports.sort_by(|a, b| a.name.cmp(&b.name));
    reports
}

pub fn summary(reports: &[EntryReport]) -> Value {
    let passed = reports.iter().filter(|r| r.passed).count();
    json!({
        "schema": 1,
        "entries": reports,
        "passed": passed,
        "failed": reports.len() - passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique() {
        let mut names: Vec<_> = ENTRIES.iter().map(|e| e.name).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), ENTRIES.len());
    }
}
