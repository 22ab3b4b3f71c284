use serde::Serialize;

use crate::algebra::Side;
use crate::error::{Error, Result};
use crate::exactla::{Echelon, Matrix};
use crate::gradedcat::{dual_object_with_zigzag, GradedModule, GradedMorphism, GradedObject};

/// `IHom(source, target)` with its classifying maps.
///
/// For right modules the grade-`g` part is `Hom(k_g (x) source, target)`, for left
/// modules it is `Hom(source (x) k_g, target)`. Either way each basis element is a
/// matrix `target.dim x source.dim` on the underlying spaces.
#[derive(Clone, Debug)]
pub struct InternalHom {
    pub source: GradedModule,
    pub target: GradedModule,
    pub value: GradedObject,
    /// One classified map per basis vector of `value`, in grade-major order.
    pub maps: Vec<Matrix>,
}

/// Outcome of testing `Hom_C(c, IHom(m1, m2)) -> Hom(c . m1, m2)` for one object `c`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdjunctionReport {
    pub c_dims: Vec<usize>,
    pub hom_c_dim: usize,
    pub hom_m_dim: usize,
    pub images_are_morphisms: bool,
    pub images_independent: bool,
}

impl AdjunctionReport {
    pub fn holds(&self) -> bool {
        self.images_are_morphisms && self.images_independent && self.hom_c_dim == self.hom_m_dim
    }
}

impl InternalHom {
    pub fn new(source: &GradedModule, target: &GradedModule) -> Result<Self> {
        if source.side() != target.side() {
            return Err(Error::SideMismatch("internal hom needs modules on the same side".into()));
        }
        let group = source.group().clone();
        let mut grades = Vec::new();
        let mut maps = Vec::new();
        for g in group.elements() {
            let shifted = source.act(&GradedObject::simple(group.clone(), g))?;
            for f in shifted.hom_space(target)? {
                grades.push(g);
                maps.push(f);
            }
        }
        Ok(InternalHom { source: source.clone(), target: target.clone(), value: GradedObject::new(group, grades)?, maps })
    }

    pub fn dims(&self) -> Vec<usize> {
        self.value.dims()
    }

    /// Evaluation `IHom (x) source -> target` for right modules, `source (x) IHom -> target`
    /// for left modules, sending `f (x) v` to `f(v)`.
    pub fn evaluation(&self) -> Result<GradedMorphism> {
        let (ds, r) = (self.source.dim(), self.maps.len());
        let field = self.source.field();
        let mut ev = Matrix::zeros(field, self.target.dim(), ds * r);
        for (t, f) in self.maps.iter().enumerate() {
            for v in 0..ds {
                let col = match self.source.side() {
                    Side::Right => t * ds + v,
                    Side::Left => v * r + t,
                };
                for row in 0..self.target.dim() {
                    ev[(row, col)] = f[(row, v)].clone();
                }
            }
        }
        let domain = match self.source.side() {
            Side::Right => self.value.tensor(self.source.grading())?,
            Side::Left => self.source.grading().tensor(&self.value)?,
        };
        GradedMorphism::new(domain, self.target.grading().clone(), ev)
    }

    /// Sends every grade-preserving `phi: c -> IHom` to `ev o (phi (x) id)` and checks the
    /// images are independent module maps filling `Hom(c . source, target)`.
    pub fn adjunction_check(&self, c: &GradedObject) -> Result<AdjunctionReport> {
        let field = self.source.field();
        let ev = self.evaluation()?.matrix;
        let acted = self.source.act(c)?;
        let hom_m_dim = acted.hom_space(&self.target)?.len();
        let id = Matrix::identity(field, self.source.dim());
        let n = self.target.dim() * acted.dim();
        let mut span = Echelon::new(field, n);
        let (mut hom_c_dim, mut all_morphisms, mut independent) = (0, true, true);
        for i in 0..c.dim() {
            for t in (0..self.maps.len()).filter(|&t| self.value.grade(t) == c.grade(i)) {
                hom_c_dim += 1;
                let mut phi = Matrix::zeros(field, self.maps.len(), c.dim());
                phi[(t, i)] = field.one();
                let lifted = match self.source.side() {
                    Side::Right => phi.kron(&id),
                    Side::Left => id.kron(&phi),
                };
                let image = &ev * &lifted;
                all_morphisms &= acted.is_morphism(&self.target, &image);
                independent &= span.insert(crate::exactla::sparse_from_dense(&image.flatten()));
            }
        }
        Ok(AdjunctionReport {
            c_dims: c.dims(),
            hom_c_dim,
            hom_m_dim,
            images_are_morphisms: all_morphisms,
            images_independent: independent,
        })
    }
}

/// Outcome of checking `Hom(c . x, m) = Hom(x, m^c)` through the explicit bijection.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CotensorReport {
    pub hom_acted_dim: usize,
    pub hom_cotensor_dim: usize,
    pub images_are_morphisms: bool,
    pub images_independent: bool,
    pub zigzags_hold: bool,
}

impl CotensorReport {
    pub fn holds(&self) -> bool {
        self.images_are_morphisms && self.images_independent && self.zigzags_hold && self.hom_acted_dim == self.hom_cotensor_dim
    }
}

/// The cotensor `m^c`: `c* (x) m` for right modules, `m (x) c*` for left modules.
pub fn cotensor(c: &GradedObject, m: &GradedModule) -> Result<GradedModule> {
    m.act(&c.dual())
}

impl CotensorReport {
    /// Transposes every `f: c . x -> m` to `f_flat: x -> m^c` and compares dimensions.
    ///
    /// Right modules: `f_flat[(i, r), v] = f[r, (i, v)]`; left modules:
    /// `f_flat[(r, i), v] = f[r, (v, i)]`.
    pub fn check(c: &GradedObject, x: &GradedModule, m: &GradedModule) -> Result<Self> {
        let field = m.field();
        let mc = cotensor(c, m)?;
        let acted = x.act(c)?;
        let homs = acted.hom_space(m)?;
        let (dc, dx, dm) = (c.dim(), x.dim(), m.dim());
        let mut span = Echelon::new(field, mc.dim() * dx);
        let (mut all_morphisms, mut independent) = (true, true);
        for f in &homs {
            let mut flat = Matrix::zeros(field, mc.dim(), dx);
            for i in 0..dc {
                for r in 0..dm {
                    for v in 0..dx {
                        let (row, col) = match m.side() {
                            Side::Right => (i * dm + r, i * dx + v),
                            Side::Left => (r * dc + i, v * dc + i),
                        };
                        flat[(row, v)] = f[(r, col)].clone();
                    }
                }
            }
            all_morphisms &= x.is_morphism(&mc, &flat);
            independent &= span.insert(crate::exactla::sparse_from_dense(&flat.flatten()));
        }
        Ok(CotensorReport {
            hom_acted_dim: homs.len(),
            hom_cotensor_dim: x.hom_space(&mc)?.len(),
            images_are_morphisms: all_morphisms,
            images_independent: independent,
            zigzags_hold: dual_object_with_zigzag(field, c)?.report.all(),
        })
    }
}
