use serde::Serialize;

use super::{GradedModule, GradedObject};
use crate::algebra::Side;
use crate::error::{Error, Result};
use crate::exactla::{cokernel_of_columns, solve_affine, sparse_from_dense, BasisCoordinates, Echelon, Matrix, Vector};

/// `0 -> sub -> middle -> quotient -> 0` of graded module objects over one algebra.
#[derive(Clone, Debug)]
pub struct ShortExactSequence {
    pub sub: GradedModule,
    pub middle: GradedModule,
    pub quotient: GradedModule,
    pub inclusion: Matrix,
    pub projection: Matrix,
}

/// Dimension and rank bookkeeping for a three-term sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ExactnessReport {
    pub dims: [usize; 3],
    pub inclusion_rank: usize,
    pub projection_rank: usize,
    pub composite_zero: bool,
    pub maps_are_morphisms: bool,
}

impl ExactnessReport {
    pub fn is_exact(&self) -> bool {
        let [a, b, c] = self.dims;
        self.maps_are_morphisms && self.composite_zero && self.inclusion_rank == a && self.projection_rank == c && a + c == b
    }
}

impl ShortExactSequence {
    /// The sequence `0 -> S -> M -> M/S -> 0` where `S` is the submodule generated by
    /// `generators`, each of which must be homogeneous.
    pub fn from_submodule(middle: &GradedModule, generators: &[Vector]) -> Result<Self> {
        let field = middle.field();
        let n = middle.dim();
        let group = middle.group().clone();
        // One echelon per grade keeps every basis vector of the submodule homogeneous.
        let mut spans: Vec<Echelon> = (0..group.order()).map(|_| Echelon::new(field, n)).collect();
        let mut basis: Vec<(usize, Vector)> = Vec::new();
        let mut frontier: Vec<(usize, Vector)> = Vec::new();
        let grade_of = |v: &Vector| -> Result<Option<usize>> {
            let mut g = None;
            for (i, x) in v.iter().enumerate() {
                if !x.is_zero() {
                    match g {
                        None => g = Some(middle.grade(i)),
                        Some(h) if h != middle.grade(i) => {
                            return Err(Error::Precondition("submodule generators must be homogeneous".into()))
                        }
                        _ => {}
                    }
                }
            }
            Ok(g)
        };
        for v in generators {
            if v.len() != n {
                return Err(Error::DimensionMismatch(format!("generator of length {}, module of dimension {n}", v.len())));
            }
            if let Some(g) = grade_of(v)? {
                frontier.push((g, v.clone()));
            }
        }
        let algebra = middle.algebra().clone();
        while let Some((g, v)) = frontier.pop() {
            if !spans[g].insert(sparse_from_dense(&v)) {
                continue;
            }
            basis.push((g, v.clone()));
            for i in 0..algebra.dim() {
                let w = middle.action(i).apply(&v);
                if let Some(h) = grade_of(&w)? {
                    frontier.push((h, w));
                }
            }
        }
        basis.sort_by_key(|(g, _)| *g);
        let vectors: Vec<Vector> = basis.iter().map(|(_, v)| v.clone()).collect();
        let inclusion = Matrix::from_columns(field, n, &vectors);
        let coords = BasisCoordinates::new(field, n, &vectors)?;
        let k = vectors.len();
        let sub_action = (0..algebra.dim())
            .map(|i| {
                let cols: Vec<Vector> =
                    vectors.iter().map(|v| coords.coords(&middle.action(i).apply(v)).expect("submodule is closed")).collect();
                Matrix::from_columns(field, k, &cols)
            })
            .collect();
        let sub_grading = GradedObject::new(group.clone(), basis.iter().map(|(g, _)| *g).collect())?;
        let sub = GradedModule::new(algebra.clone(), middle.side(), sub_grading, sub_action)?;

        let coker = cokernel_of_columns(field, n, (0..k).map(|c| inclusion.sparse_column(c)));
        let quotient_action = (0..algebra.dim())
            .map(|i| &(&coker.projection * middle.action(i)) * &coker.section)
            .collect();
        let quotient_grading = GradedObject::new(group, coker.kept.iter().map(|&q| middle.grade(q)).collect())?;
        let quotient = GradedModule::new(algebra, middle.side(), quotient_grading, quotient_action)?;
        Ok(ShortExactSequence { sub, middle: middle.clone(), quotient, inclusion, projection: coker.projection })
    }

    pub fn report(&self) -> ExactnessReport {
        let composite = &self.projection * &self.inclusion;
        ExactnessReport {
            dims: [self.sub.dim(), self.middle.dim(), self.quotient.dim()],
            inclusion_rank: self.inclusion.rank(),
            projection_rank: self.projection.rank(),
            composite_zero: composite.is_zero(),
            maps_are_morphisms: self.sub.is_morphism(&self.middle, &self.inclusion)
                && self.middle.is_morphism(&self.quotient, &self.projection),
        }
    }

    pub fn verify(&self) -> Result<ExactnessReport> {
        let report = self.report();
        if report.is_exact() {
            Ok(report)
        } else {
            Err(Error::NotExact(format!("{report:?}")))
        }
    }

    /// Applies the `C`-action by `c` to every term and map.
    pub fn act(&self, c: &GradedObject) -> Result<ShortExactSequence> {
        let id = Matrix::identity(self.middle.field(), c.dim());
        let lift = |f: &Matrix| match self.middle.side() {
            Side::Right => id.kron(f),
            Side::Left => f.kron(&id),
        };
        Ok(ShortExactSequence {
            sub: self.sub.act(c)?,
            middle: self.middle.act(c)?,
            quotient: self.quotient.act(c)?,
            inclusion: lift(&self.inclusion),
            projection: lift(&self.projection),
        })
    }

    /// Whether the projection has a module section.
    pub fn splits(&self) -> Result<bool> {
        let sections = self.quotient.hom_space(&self.middle)?;
        let field = self.middle.field();
        let q = self.quotient.dim();
        let composites: Vec<Vector> = sections.iter().map(|s| (&self.projection * s).flatten()).collect();
        let system = Matrix::from_columns(field, q * q, &composites);
        Ok(solve_affine(&system, &Matrix::identity(field, q).flatten())?.into_option().is_some())
    }
}

/// Checks that `c (x) -` (or `- (x) c` for left modules) carries an exact sequence to an exact one.
pub fn exactness_probe(c: &GradedObject, seq: &ShortExactSequence) -> Result<ExactnessReport> {
    seq.verify()?;
    Ok(seq.act(c)?.report())
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::exactla::Field;
    use crate::gradedcat::GradedAlgebra;
    use crate::groups::FiniteGroup;

    #[test]
    fn non_split_sequence_stays_exact() {
        // Over F_2, k[Z/2] with trivial grading has the non-split sequence 0 -> k -> B -> k -> 0.
        let f2 = Field::prime(2).unwrap();
        let g = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let b = Arc::new(GradedAlgebra::group_algebra_trivially_graded(g.clone(), f2));
        let reg = GradedModule::regular(b, Side::Right);
        let seq = ShortExactSequence::from_submodule(&reg, &[vec![f2.one(), f2.one()]]).unwrap();
        let report = seq.verify().unwrap();
        assert_eq!(report.dims, [1, 2, 1]);
        assert!(!seq.splits().unwrap());
        for h in g.elements() {
            let r = exactness_probe(&GradedObject::simple(g.clone(), h), &seq).unwrap();
            assert!(r.is_exact());
            assert_eq!(r.dims, [1, 2, 1]);
        }
    }

    #[test]
    fn split_sequence_over_rationals() {
        let q = Field::Rational;
        let g = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let b = Arc::new(GradedAlgebra::group_algebra(g.clone(), q));
        let two = GradedModule::free(b.clone(), Side::Right, &[0, 0]).unwrap();
        let first: Vector = (0..4).map(|i| if i == 0 { q.one() } else { q.zero() }).collect();
        let seq = ShortExactSequence::from_submodule(&two, &[first]).unwrap();
        assert_eq!(seq.verify().unwrap().dims, [2, 4, 2]);
        assert!(seq.splits().unwrap());
        let c = GradedObject::from_dims(g, &[1, 1]).unwrap();
        assert_eq!(exactness_probe(&c, &seq).unwrap().dims, [4, 8, 4]);
    }

    #[test]
    fn inhomogeneous_generator_is_rejected() {
        let q = Field::Rational;
        let g = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let b = Arc::new(GradedAlgebra::group_algebra(g, q));
        let reg = GradedModule::regular(b, Side::Right);
        assert!(ShortExactSequence::from_submodule(&reg, &[vec![q.one(), q.one()]]).is_err());
    }
}
