use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie::{dot, GroupData, GroupSpec, TorusElement, Weight};

/// Value of the moment map on a fixed component.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum MomentValue {
    /// Group-valued moment map, a torus element.
    Group(TorusElement),
    /// Hamiltonian moment map, a Cartan vector in orthonormal coordinates.
    Algebra(Vec<f64>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ComponentKind {
    IsolatedPoint,
}

/// One connected component of the zero set of the generating vector field.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FixedComponent {
    pub kind: ComponentKind,
    pub moment: MomentValue,
    /// Pullback of the 2-form; zero on isolated points.
    pub omega_restriction: f64,
    pub normal_weights: Vec<(Weight, u32)>,
    pub orientation_sign: i32,
}

impl FixedComponent {
    pub fn isolated(
        moment: MomentValue,
        normal_weights: Vec<(Weight, u32)>,
        orientation_sign: i32,
    ) -> Self {
        FixedComponent {
            kind: ComponentKind::IsolatedPoint,
            moment,
            omega_restriction: 0.0,
            normal_weights,
            orientation_sign,
        }
    }

    /// The same point presented with every normal weight negated and the
    /// orientation sign flipped accordingly.
    pub fn reoriented(&self) -> Self {
        let flips: u32 = self.normal_weights.iter().map(|(_, m)| m).sum();
        FixedComponent {
            normal_weights: self.normal_weights.iter().map(|(w, m)| (-w, *m)).collect(),
            orientation_sign: if flips % 2 == 0 {
                self.orientation_sign
            } else {
                -self.orientation_sign
            },
            ..self.clone()
        }
    }

    /// `exp(2 pi i <Phi_F, p>)` for an algebra moment, `Phi_F^p` for a
    /// group moment paired with a weight.
    pub fn moment_phase(&self, g: &GroupData, p: &Parameter) -> Result<Complex64> {
        match (&self.moment, p) {
            (MomentValue::Algebra(mu), Parameter::Algebra(xi)) => {
                Ok(Complex64::from_polar(1.0, TAU * dot(mu, xi)))
            }
            (MomentValue::Algebra(mu), Parameter::Weight(nu)) => Ok(Complex64::from_polar(
                1.0,
                TAU * dot(mu, &g.weight_vector(nu)),
            )),
            (MomentValue::Group(t), Parameter::Weight(nu)) => Ok(t.pow(nu)),
            (MomentValue::Group(_), Parameter::Algebra(_)) => Err(Error::Mismatch(
                "a group-valued moment map pairs with weights, not Cartan vectors".into(),
            )),
        }
    }
}

/// Equivariant parameter: a Cartan vector, or a weight `lambda + rho`.
#[derive(Debug, Clone, PartialEq)]
pub enum Parameter {
    Algebra(Vec<f64>),
    Weight(Weight),
}

impl Parameter {
    pub fn vector(&self, g: &GroupData) -> Vec<f64> {
        match self {
            Parameter::Algebra(xi) => xi.clone(),
            Parameter::Weight(nu) => g.weight_vector(nu),
        }
    }
}

/// Named desk-scale models.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ModelSpec {
    /// The SU(2) conjugacy class of `diag(e^{i theta}, e^{-i theta})`, `0 < theta < pi`.
    ConjugacyClass { theta: f64 },
    /// The coadjoint orbit of SU(2) through `s alpha`, a 2-sphere.
    Orbit { s: f64 },
    /// A torus acting without fixed points.
    TorusFree,
}

impl fmt::Display for ModelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelSpec::ConjugacyClass { theta } => write!(f, "c-theta:{theta}"),
            ModelSpec::Orbit { s } => write!(f, "orbit:{s}"),
            ModelSpec::TorusFree => f.write_str("torus-free"),
        }
    }
}

impl FromStr for ModelSpec {
    type Err = Error;
    fn from_str(input: &str) -> Result<Self> {
        let s = input.trim();
        let parse_value = |v: &str| -> Result<f64> {
            let x: f64 = v
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad number in model '{s}'")))?;
            if x.is_finite() {
                Ok(x)
            } else {
                Err(Error::Parse(format!("non-finite value in model '{s}'")))
            }
        };
        if s == "torus-free" {
            return Ok(ModelSpec::TorusFree);
        }
        if let Some(v) = s.strip_prefix("c-theta:") {
            let theta = parse_value(v)?;
            if !(theta > 0.0 && theta < PI) {
                return Err(Error::Parse(format!(
                    "c-theta angle {theta} outside (0, pi)"
                )));
            }
            return Ok(ModelSpec::ConjugacyClass { theta });
        }
        if let Some(v) = s.strip_prefix("orbit:") {
            let radius = parse_value(v)?;
            if !(radius > 0.0) {
                return Err(Error::Parse(format!(
                    "orbit parameter {radius} must be positive"
                )));
            }
            return Ok(ModelSpec::Orbit { s: radius });
        }
        Err(Error::Parse(format!("unknown model '{s}'")))
    }
}

/// A G-space described by its fixed-point data.
#[derive(Debug, Clone)]
pub struct GSpaceModel {
    group: GroupData,
    name: String,
    spec: Option<ModelSpec>,
    components: Vec<FixedComponent>,
    /// Order of a generic stabilizer.
    stabilizer_order: u32,
}

impl GSpaceModel {
    /// A model with prescribed isolated fixed data.
    pub fn custom(
        group: GroupData,
        name: impl Into<String>,
        components: Vec<FixedComponent>,
    ) -> Result<Self> {
        for c in &components {
            if let MomentValue::Group(t) = &c.moment {
                if t.rank() != group.rank() {
                    return Err(Error::Mismatch(format!(
                        "moment value of rank {}",
                        t.rank()
                    )));
                }
            }
            if let MomentValue::Algebra(v) = &c.moment {
                if v.len() != group.rank() {
                    return Err(Error::Mismatch(format!("moment value of rank {}", v.len())));
                }
            }
            if c.normal_weights
                .iter()
                .any(|(w, _)| w.rank() != group.rank())
            {
                return Err(Error::Mismatch("normal weight of the wrong rank".into()));
            }
            if c.orientation_sign != 1 && c.orientation_sign != -1 {
                return Err(Error::Mismatch(format!(
                    "orientation sign {}",
                    c.orientation_sign
                )));
            }
        }
        Ok(GSpaceModel {
            group,
            name: name.into(),
            spec: None,
            components,
            stabilizer_order: 1,
        })
    }

    pub fn from_spec(group: &GroupData, spec: ModelSpec) -> Result<Self> {
        let mut model = match spec {
            ModelSpec::ConjugacyClass { theta } => GSpaceModel::conjugacy_class(theta)?,
            ModelSpec::Orbit { s } => GSpaceModel::coadjoint_orbit(s)?,
            ModelSpec::TorusFree => {
                if !group.is_abelian() {
                    return Err(Error::UnsupportedGroup(format!(
                        "torus-free model on {}",
                        group.name()
                    )));
                }
                GSpaceModel::custom(group.clone(), "torus-free", Vec::new())?
            }
        };
        if model.group.spec() != group.spec() {
            return Err(Error::UnsupportedGroup(format!(
                "model {spec} on {}",
                group.name()
            )));
        }
        model.spec = Some(spec);
        Ok(model)
    }

    /// The conjugacy class of `t_theta = diag(e^{i theta}, e^{-i theta})` in SU(2):
    /// fixed points `t_theta` and `t_theta^{-1}` with normal weights `alpha` and `-alpha`.
    pub fn conjugacy_class(theta: f64) -> Result<Self> {
        if !(theta > 0.0 && theta < PI) {
            return Err(Error::SingularValue(format!(
                "conjugacy class angle {theta} outside (0, pi)"
            )));
        }
        let g = GroupData::build(&GroupSpec::su2())?;
        let alpha = g.positive_roots()[0].weight.clone();
        let s = theta / TAU;
        let components = vec![
            FixedComponent::isolated(
                MomentValue::Group(TorusElement::new(vec![s])),
                vec![(alpha.clone(), 1)],
                1,
            ),
            FixedComponent::isolated(
                MomentValue::Group(TorusElement::new(vec![-s])),
                vec![(-&alpha, 1)],
                1,
            ),
        ];
        let mut m = GSpaceModel::custom(g, format!("c-theta:{theta}"), components)?;
        m.spec = Some(ModelSpec::ConjugacyClass { theta });
        Ok(m)
    }

    /// The coadjoint orbit through `s alpha`: fixed points `+-s alpha` with
    /// normal weights `+-alpha`.
    pub fn coadjoint_orbit(s: f64) -> Result<Self> {
        if !(s > 0.0) {
            return Err(Error::SingularValue(format!("orbit parameter {s}")));
        }
        let g = GroupData::build(&GroupSpec::su2())?;
        let root = &g.positive_roots()[0];
        let alpha = root.weight.clone();
        let top: Vec<f64> = root.vector.iter().map(|x| s * x).collect();
        let bottom: Vec<f64> = top.iter().map(|x| -x).collect();
        let components = vec![
            FixedComponent::isolated(MomentValue::Algebra(top), vec![(alpha.clone(), 1)], 1),
            FixedComponent::isolated(MomentValue::Algebra(bottom), vec![(-&alpha, 1)], 1),
        ];
        let mut m = GSpaceModel::custom(g, format!("orbit:{s}"), components)?;
        m.spec = Some(ModelSpec::Orbit { s });
        Ok(m)
    }

    pub fn with_stabilizer_order(mut self, k: u32) -> Self {
        self.stabilizer_order = k;
        self
    }

    /// The same model with the fixed points listed in reverse order and each
    /// presented through [`FixedComponent::reoriented`].
    pub fn swapped(&self) -> Self {
        let mut m = self.clone();
        m.components = self
            .components
            .iter()
            .rev()
            .map(FixedComponent::reoriented)
            .collect();
        m
    }

    pub fn group(&self) -> &GroupData {
        &self.group
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn spec(&self) -> Option<ModelSpec> {
        self.spec
    }

    pub fn stabilizer_order(&self) -> u32 {
        self.stabilizer_order
    }

    /// Fixed components for a regular parameter. For the isolated models here
    /// the set does not depend on the parameter.
    pub fn fixed_components(&self) -> &[FixedComponent] {
        &self.components
    }
}
