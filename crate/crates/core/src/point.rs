//! Projective points with a canonical representative: the last nonzero
//! coordinate is scaled to 1, so equality is plain coordinate equality.

use crate::error::{Error, Result};
use crate::field::{Elem, Field};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjPoint {
    field: Field,
    coords: [Elem; 3],
}

impl ProjPoint {
    pub fn new(field: &Field, coords: [Elem; 3]) -> Result<ProjPoint> {
        let last = (0..3).rev().find(|&i| !field.is_zero(&coords[i]));
        let Some(last) = last else {
            return Err(Error::ZeroPoint);
        };
        let inv = field.inv(&coords[last])?;
        let mut c = coords;
        for v in c.iter_mut() {
            *v = field.mul(v, &inv);
        }
        Ok(ProjPoint {
            field: field.clone(),
            coords: c,
        })
    }

    pub fn from_i64(field: &Field, coords: [i64; 3]) -> Result<ProjPoint> {
        ProjPoint::new(
            field,
            [
                field.from_i64(coords[0]),
                field.from_i64(coords[1]),
                field.from_i64(coords[2]),
            ],
        )
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coords(&self) -> &[Elem; 3] {
        &self.coords
    }

    /// Index of the canonical affine chart: the last nonzero coordinate.
    pub fn chart(&self) -> usize {
        (0..3)
            .rev()
            .find(|&i| !self.field.is_zero(&self.coords[i]))
            .expect("normalized point has a nonzero coordinate")
    }

    pub fn rebase(&self, target: &Field) -> Result<ProjPoint> {
        let c = [
            target.embed_base(&self.field, &self.coords[0])?,
            target.embed_base(&self.field, &self.coords[1])?,
            target.embed_base(&self.field, &self.coords[2])?,
        ];
        ProjPoint::new(target, c)
    }

    pub fn to_string_pretty(&self) -> String {
        format!(
            "({} : {} : {})",
            self.field.elem_to_string(&self.coords[0]),
            self.field.elem_to_string(&self.coords[1]),
            self.field.elem_to_string(&self.coords[2])
        )
    }
}
