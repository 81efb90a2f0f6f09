//! Parameter selection: closed-form exponents for each pipeline and the
//! concrete integer parameters derived from them.
//!
//! Every pipeline here trades a matrix-product stage against a per-entry or
//! per-source search stage, and its headline exponent comes from balancing
//! the two. The balances, with `w` the model exponent of square boolean
//! matrix multiplication and `k` the partition quality (a weight-level
//! surface crosses `O(r^{1-1/k})` of `r` cells):
//!
//! * Star product: `n^w r + n^2.5 / r^{1/2k}`, balanced by
//!   `r = n^{(2.5-w) 2k/(2k+1)}`, total `n^{(5k+w)/(2k+1)}`.
//! * Bucketed product: `n^w d + n^2 sqrt(d)` with `d = n^{(2w-2)/3}`,
//!   total `n^{2+(w-1)/3}`.
//! * Geometric APSP: `2l-1` star products plus `(n/l) log n` sources of
//!   `n^1.5` queries each; `l = n^{(2.5-w)/(4k+2)}` gives
//!   `n^{(10k+2.5+w)/(4k+2)}`.
//! * Node-weighted APSP: bucketed products against `n^2.5/s` long-path
//!   work; `s = n^{2(2.5-w)/9}` gives `n^{(20+w)/9}`.
//! * Bounded-weight geometric APSP: `c*l` sparse layer products against
//!   `n^2.5/sqrt(l)`; `l = n^{(5-2w)/3}` gives `n^{(5k+w)/(2k+1)}` again.
//! * Small-palette APSP: `L*s` bucketed products against `n^2.5/s`;
//!   `s = (n^{(2.5-w)/3}/L)^{1/2}` gives `sqrt(L) * n^{2.5-(2.5-w)/6}`,
//!   of which [`small_l_apsp_factor_exponent`] is the power of `n`.
//! * Nondecreasing paths: `s` threshold products at `n^2.473` each against
//!   `n^2.5/s`; `s = n^0.0135` balances both sides at `n^2.4865`, quoted
//!   as the headline `O(n^2.487)`.
//! * Minimum triangle: one minimum search over `n^3` triples, `n^1.5`.
//!
//! Each derived parameter is `ceil(n^e)` for its exponent `e`, clamped to
//! `[1, n]`. At bench scales the small exponents all collapse to 1 or 2;
//! [`ParameterPlan::warnings`] records every clamp so run records show when
//! the asymptotic regime is out of reach.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default model exponent for square boolean matrix multiplication used by
/// parameter selection. Executed kernels are cubic or Strassen; this value
/// only shapes the derived parameters.
pub const OMEGA_MODEL_DEFAULT: f64 = 2.373;

/// Exponent of the query bound of the analytic threshold product.
pub const APNP_PRODUCT_EXPONENT: f64 = 2.473;

/// Exponent for the nondecreasing-paths stage count `s = n^0.0135`.
pub const APNP_S_EXPONENT: f64 = 0.0135;

/// Quoted headline exponent for the nondecreasing-paths pipeline. The exact
/// balance of `s n^2.473 + n^2.5/s` at `s = n^0.0135` is `n^2.4865`; the
/// headline rounds it up to three decimals.
pub const APNP_EXPONENT: f64 = 2.487;

/// Exponent of the minimum-triangle search charge over `n^3` triples.
pub const MIN_TRIANGLE_EXPONENT: f64 = 1.5;

/// The parameterizable algorithms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Task {
    /// Geometric star product of two matrices (distance product through a
    /// point partition).
    StarProduct,
    /// Boolean-min product through a rank bucketing.
    BucketedProduct,
    /// Node-weighted APSP: bucketed powering plus a hitting-set stage.
    NodeWeightedApsp,
    /// Geometric APSP: star-product powering plus a hitting-set stage.
    GeometricApsp,
    /// Geometric APSP with weights in `[1, c]`: layered sparse products.
    BoundedApsp,
    /// APSP with at most `L` distinct weights out of each vertex.
    SmallLApsp,
    /// All pairs nondecreasing paths.
    Apnp,
    /// Minimum-weight triangle by one quantum minimum over all triples.
    MinTriangle,
}

impl Task {
    /// Stable identifier used in records and on the command line.
    pub fn name(self) -> &'static str {
        match self {
            Task::StarProduct => "star-product",
            Task::BucketedProduct => "bucketed-product",
            Task::NodeWeightedApsp => "node-weighted",
            Task::GeometricApsp => "geometric",
            Task::BoundedApsp => "bounded",
            Task::SmallLApsp => "small-l",
            Task::Apnp => "apnp",
            Task::MinTriangle => "min-triangle",
        }
    }

    /// Parses [`Task::name`] output.
    pub fn parse(s: &str) -> Result<Task> {
        match s {
            "star-product" => Ok(Task::StarProduct),
            "bucketed-product" => Ok(Task::BucketedProduct),
            "node-weighted" => Ok(Task::NodeWeightedApsp),
            "geometric" => Ok(Task::GeometricApsp),
            "bounded" => Ok(Task::BoundedApsp),
            "small-l" => Ok(Task::SmallLApsp),
            "apnp" => Ok(Task::Apnp),
            "min-triangle" => Ok(Task::MinTriangle),
            other => Err(Error::InvalidParameter(format!("unknown task {other:?}"))),
        }
    }

    /// Whether this task's formulas involve the matmul model exponent.
    pub fn uses_omega(self) -> bool {
        !matches!(self, Task::Apnp | Task::MinTriangle)
    }
}

/// Cell-count exponent for the star product: `r = n^{(2.5-w) 2k/(2k+1)}`.
pub fn exponent_r(kappa: u32, omega: f64) -> f64 {
    let k = kappa as f64;
    (2.5 - omega) * 2.0 * k / (2.0 * k + 1.0)
}

/// Bucket-width exponent for the bucketed product: `d = n^{(2w-2)/3}`.
pub fn exponent_d(omega: f64) -> f64 {
    (2.0 * omega - 2.0) / 3.0
}

/// Short-path horizon exponent for node-weighted APSP:
/// `s = n^{2(2.5-w)/9}`.
pub fn exponent_s_node_weighted(omega: f64) -> f64 {
    2.0 * (2.5 - omega) / 9.0
}

/// Powering-depth exponent for geometric APSP: `l = n^{(2.5-w)/(4k+2)}`.
pub fn exponent_ell_geometric(kappa: u32, omega: f64) -> f64 {
    let k = kappa as f64;
    (2.5 - omega) / (4.0 * k + 2.0)
}

/// Powering-depth exponent for bounded-weight APSP: `l = n^{(5-2w)/3}`.
pub fn exponent_ell_bounded(omega: f64) -> f64 {
    (5.0 - 2.0 * omega) / 3.0
}

/// Balanced total of the star product, `n^{(5k+w)/(2k+1)}`.
pub fn star_product_exponent(kappa: u32, omega: f64) -> f64 {
    let k = kappa as f64;
    (5.0 * k + omega) / (2.0 * k + 1.0)
}

/// Balanced total of the bucketed product, `n^{2+(w-1)/3}`.
pub fn bucketed_product_exponent(omega: f64) -> f64 {
    2.0 + (omega - 1.0) / 3.0
}

/// Balanced total of geometric APSP, `n^{(10k+2.5+w)/(4k+2)}`.
pub fn geometric_apsp_exponent(kappa: u32, omega: f64) -> f64 {
    let k = kappa as f64;
    (10.0 * k + 2.5 + omega) / (4.0 * k + 2.0)
}

/// Balanced total of node-weighted APSP, `n^{(20+w)/9}`.
pub fn node_weighted_apsp_exponent(omega: f64) -> f64 {
    (20.0 + omega) / 9.0
}

/// Balanced total of bounded-weight geometric APSP, `n^{(5k+w)/(2k+1)}`.
pub fn bounded_apsp_exponent(kappa: u32, omega: f64) -> f64 {
    star_product_exponent(kappa, omega)
}

/// Power of `n` in the small-palette APSP total `sqrt(L) n^{2.5-(2.5-w)/6}`.
pub fn small_l_apsp_factor_exponent(omega: f64) -> f64 {
    2.5 - (2.5 - omega) / 6.0
}

/// `ceil(n^e)` without clamping.
pub fn ceil_power(n: usize, e: f64) -> usize {
    (n as f64).powf(e).ceil() as usize
}

/// A task instance's derived parameters and predicted exponent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParameterPlan {
    pub task: Task,
    pub n: usize,
    /// Partition quality constant.
    pub kappa: u32,
    /// Palette size for [`Task::SmallLApsp`]; 1 elsewhere.
    pub l: usize,
    /// Weight bound for [`Task::BoundedApsp`]; 1 elsewhere.
    pub c: f64,
    /// Model matmul exponent after clamping into `[2, 2.5]`.
    pub omega_model: f64,
    /// Cells per column for star products.
    pub r: Option<usize>,
    /// Bucket width for bucketed products.
    pub d: Option<usize>,
    /// Short-path horizon (products applied / hitting-path length).
    pub s: Option<usize>,
    /// Powering depth for the geometric pipelines.
    pub ell: Option<usize>,
    /// Power of `n` in the predicted total. For [`Task::SmallLApsp`] the
    /// total also carries a `sqrt(L)` factor not folded in here.
    pub predicted_exponent: f64,
    /// Clamp and range notes; empty when every formula applied untouched.
    pub warnings: Vec<String>,
}

fn clamp_param(raw: f64, n: usize, name: &str, warnings: &mut Vec<String>) -> usize {
    if raw < 1.0 {
        warnings.push(format!("{name} = {raw:.4} clamped up to 1"));
        return 1;
    }
    let v = raw.ceil() as usize;
    if v > n {
        warnings.push(format!("{name} = {v} clamped down to n = {n}"));
        return n;
    }
    v
}

/// Derives the integer parameters and predicted exponent for `task` at size
/// `n`. `kappa` is the partition quality, `l` the palette size (small-L
/// only), `c` the weight bound (bounded only); pass 1 where irrelevant.
///
/// The model exponent is clamped into `[2, 2.5]` with a warning when a
/// task's formulas use it; each derived parameter is `ceil(n^e)` clamped to
/// `[1, n]`.
pub fn select_parameters(
    task: Task,
    n: usize,
    kappa: u32,
    l: usize,
    c: f64,
    omega_model: f64,
) -> Result<ParameterPlan> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    if kappa == 0 {
        return Err(Error::InvalidParameter("kappa must be at least 1".into()));
    }
    if task == Task::SmallLApsp && l == 0 {
        return Err(Error::InvalidParameter(
            "palette size L must be at least 1".into(),
        ));
    }
    if task == Task::BoundedApsp && c < 1.0 {
        return Err(Error::InvalidParameter(format!(
            "weight bound c = {c} must be at least 1"
        )));
    }

    let mut warnings = Vec::new();
    let omega = if task.uses_omega() && !(2.0..=2.5).contains(&omega_model) {
        let clamped = omega_model.clamp(2.0, 2.5);
        warnings.push(format!(
            "omega_model {omega_model} outside [2, 2.5], clamped to {clamped}"
        ));
        clamped
    } else {
        omega_model
    };

    let nf = n as f64;
    let mut plan = ParameterPlan {
        task,
        n,
        kappa,
        l,
        c,
        omega_model: omega,
        r: None,
        d: None,
        s: None,
        ell: None,
        predicted_exponent: 0.0,
        warnings: Vec::new(),
    };

    match task {
        Task::StarProduct => {
            plan.r = Some(clamp_param(
                nf.powf(exponent_r(kappa, omega)),
                n,
                "r",
                &mut warnings,
            ));
            plan.predicted_exponent = star_product_exponent(kappa, omega);
        }
        Task::BucketedProduct => {
            plan.d = Some(clamp_param(
                nf.powf(exponent_d(omega)),
                n,
                "d",
                &mut warnings,
            ));
            plan.predicted_exponent = bucketed_product_exponent(omega);
        }
        Task::NodeWeightedApsp => {
            plan.d = Some(clamp_param(
                nf.powf(exponent_d(omega)),
                n,
                "d",
                &mut warnings,
            ));
            plan.s = Some(clamp_param(
                nf.powf(exponent_s_node_weighted(omega)),
                n,
                "s",
                &mut warnings,
            ));
            plan.predicted_exponent = node_weighted_apsp_exponent(omega);
        }
        Task::GeometricApsp => {
            plan.r = Some(clamp_param(
                nf.powf(exponent_r(kappa, omega)),
                n,
                "r",
                &mut warnings,
            ));
            plan.ell = Some(clamp_param(
                nf.powf(exponent_ell_geometric(kappa, omega)),
                n,
                "l",
                &mut warnings,
            ));
            plan.predicted_exponent = geometric_apsp_exponent(kappa, omega);
        }
        Task::BoundedApsp => {
            plan.r = Some(clamp_param(
                nf.powf(exponent_r(kappa, omega)),
                n,
                "r",
                &mut warnings,
            ));
            plan.ell = Some(clamp_param(
                nf.powf(exponent_ell_bounded(omega)),
                n,
                "l",
                &mut warnings,
            ));
            plan.predicted_exponent = bounded_apsp_exponent(kappa, omega);
        }
        Task::SmallLApsp => {
            plan.d = Some(clamp_param(
                nf.powf(exponent_d(omega)),
                n,
                "d",
                &mut warnings,
            ));
            // s = (n^{(2.5-w)/3} / L)^{1/2} = n^{(2.5-w)/6} / sqrt(L).
            let raw = nf.powf(exponent_ell_geometric(1, omega)) / (l as f64).sqrt();
            plan.s = Some(clamp_param(raw, n, "s", &mut warnings));
            plan.predicted_exponent = small_l_apsp_factor_exponent(omega);
        }
        Task::Apnp => {
            plan.s = Some(clamp_param(nf.powf(APNP_S_EXPONENT), n, "s", &mut warnings));
            plan.predicted_exponent = APNP_EXPONENT;
        }
        Task::MinTriangle => {
            plan.predicted_exponent = MIN_TRIANGLE_EXPONENT;
        }
    }
    plan.warnings = warnings;
    Ok(plan)
}

/// One headline-exponent anchor: a `(task, kappa)` pair whose predicted
/// exponent at the default model exponent is checked to four decimals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentAnchor {
    /// Stable identifier, also the key in the acceptance config.
    pub id: &'static str,
    pub task: Task,
    pub kappa: u32,
}

/// The eight headline exponents the suite reproduces to four decimals.
pub const EXPONENT_ANCHORS: [ExponentAnchor; 8] = [
    ExponentAnchor {
        id: "star-k1",
        task: Task::StarProduct,
        kappa: 1,
    },
    ExponentAnchor {
        id: "star-k3",
        task: Task::StarProduct,
        kappa: 3,
    },
    ExponentAnchor {
        id: "geometric-k1",
        task: Task::GeometricApsp,
        kappa: 1,
    },
    ExponentAnchor {
        id: "geometric-k3",
        task: Task::GeometricApsp,
        kappa: 3,
    },
    ExponentAnchor {
        id: "node-weighted",
        task: Task::NodeWeightedApsp,
        kappa: 1,
    },
    ExponentAnchor {
        id: "small-l-factor",
        task: Task::SmallLApsp,
        kappa: 1,
    },
    ExponentAnchor {
        id: "apnp",
        task: Task::Apnp,
        kappa: 1,
    },
    ExponentAnchor {
        id: "bounded-k1",
        task: Task::BoundedApsp,
        kappa: 1,
    },
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn headline_exponents_reproduce_to_four_decimals() {
        let expected = [
            ("star-k1", 2.4577),
            ("star-k3", 2.4819),
            ("geometric-k1", 2.4788),
            ("geometric-k3", 2.4909),
            ("node-weighted", 2.4859),
            ("small-l-factor", 2.4788),
            ("apnp", 2.487),
            ("bounded-k1", 2.4577),
        ];
        for (anchor, (id, value)) in EXPONENT_ANCHORS.iter().zip(expected) {
            assert_eq!(anchor.id, id);
            let plan =
                select_parameters(anchor.task, 256, anchor.kappa, 2, 4.0, OMEGA_MODEL_DEFAULT)
                    .unwrap();
            assert!(
                (plan.predicted_exponent - value).abs() < 5e-5,
                "{id}: predicted {} vs {value}",
                plan.predicted_exponent
            );
        }
    }

    #[test]
    fn derived_values_on_the_bench_grid() {
        for (n, d) in [
            (8, 7),
            (64, 46),
            (128, 85),
            (256, 161),
            (512, 302),
            (1024, 570),
        ] {
            let plan = select_parameters(Task::NodeWeightedApsp, n, 1, 1, 1.0, OMEGA_MODEL_DEFAULT)
                .unwrap();
            assert_eq!(plan.d, Some(d), "d at n = {n}");
            assert_eq!(plan.s, Some(2), "s at n = {n}");
        }
        for n in [8, 64, 512, 1024] {
            let geo =
                select_parameters(Task::GeometricApsp, n, 1, 1, 1.0, OMEGA_MODEL_DEFAULT).unwrap();
            assert_eq!(geo.r, Some(2));
            assert_eq!(geo.ell, Some(2));
            let apnp = select_parameters(Task::Apnp, n, 1, 1, 1.0, OMEGA_MODEL_DEFAULT).unwrap();
            assert_eq!(apnp.s, Some(2));
            let bounded =
                select_parameters(Task::BoundedApsp, n, 1, 1, 4.0, OMEGA_MODEL_DEFAULT).unwrap();
            assert_eq!(bounded.ell, Some(2));
        }
        let star3 =
            select_parameters(Task::StarProduct, 1024, 3, 1, 1.0, OMEGA_MODEL_DEFAULT).unwrap();
        assert_eq!(star3.r, Some(3));
    }

    #[test]
    fn derived_values_are_clamped_ceil_powers() {
        let omega = OMEGA_MODEL_DEFAULT;
        for n in [1, 2, 5, 17, 100, 999] {
            let plan = select_parameters(Task::GeometricApsp, n, 1, 1, 1.0, omega).unwrap();
            let r = ceil_power(n, exponent_r(1, omega)).clamp(1, n);
            let ell = ceil_power(n, exponent_ell_geometric(1, omega)).clamp(1, n);
            assert_eq!(plan.r, Some(r), "r at n = {n}");
            assert_eq!(plan.ell, Some(ell), "l at n = {n}");
        }
    }

    #[test]
    fn small_palette_horizon_clamps_to_one_with_a_warning() {
        let plan = select_parameters(Task::SmallLApsp, 64, 1, 3, 1.0, OMEGA_MODEL_DEFAULT).unwrap();
        assert_eq!(plan.s, Some(1), "64^0.0212 / sqrt(3) < 1");
        assert!(plan.warnings.iter().any(|w| w.contains("clamped up")));
        let wide = select_parameters(Task::SmallLApsp, 64, 1, 1, 1.0, OMEGA_MODEL_DEFAULT).unwrap();
        assert_eq!(wide.s, Some(2));
    }

    #[test]
    fn omega_outside_range_is_clamped_with_a_warning() {
        let plan = select_parameters(Task::StarProduct, 64, 1, 1, 1.0, 3.0).unwrap();
        assert_eq!(plan.omega_model, 2.5);
        assert!(plan.warnings.iter().any(|w| w.contains("clamped")));
        assert!(
            (plan.predicted_exponent - 2.5).abs() < 1e-12,
            "(5 + 2.5) / 3"
        );
        let quiet = select_parameters(Task::Apnp, 64, 1, 1, 1.0, 3.0).unwrap();
        assert!(quiet.warnings.is_empty(), "apnp formulas ignore omega");
    }

    #[test]
    fn degenerate_inputs_are_rejected() {
        assert!(select_parameters(Task::Apnp, 0, 1, 1, 1.0, 2.373).is_err());
        assert!(select_parameters(Task::StarProduct, 8, 0, 1, 1.0, 2.373).is_err());
        assert!(select_parameters(Task::SmallLApsp, 8, 1, 0, 1.0, 2.373).is_err());
        assert!(select_parameters(Task::BoundedApsp, 8, 1, 1, 0.5, 2.373).is_err());
        assert!(Task::parse("geometry").is_err());
        assert_eq!(Task::parse("min-triangle").unwrap(), Task::MinTriangle);
    }
}
