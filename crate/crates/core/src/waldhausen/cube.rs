use serde::{Deserialize, Serialize};

use crate::waldhausen::category::FiniteWaldhausenCategory;

/// Marker for steps that would leave the grid.
pub const NO_STEP: usize = usize::MAX;

/// A functor from a product of finite total orders `[n_0] x ... x [n_{m-1}]`
/// into a finite category, stored by its objects and unit steps. Cells are
/// indexed row-major, so axis 0 is the most significant.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cube {
    shape: Vec<usize>,
    objects: Vec<usize>,
    /// `steps[axis][cell]`: morphism from `cell` to `cell + e_axis`.
    steps: Vec<Vec<usize>>,
}

impl Cube {
    pub fn new(shape: Vec<usize>, objects: Vec<usize>, steps: Vec<Vec<usize>>) -> Self {
        debug_assert_eq!(objects.len(), shape.iter().product::<usize>());
        debug_assert_eq!(steps.len(), shape.len());
        Cube { shape, objects, steps }
    }

    /// The constant cube on the zero object.
    pub fn zero(c: &FiniteWaldhausenCategory, shape: Vec<usize>) -> Self {
        let cells = shape.iter().product();
        let id = c.identity(c.zero());
        let mut cube = Cube { objects: vec![c.zero(); cells], steps: vec![vec![NO_STEP; cells]; shape.len()], shape };
        for a in 0..cube.shape.len() {
            for cell in 0..cells {
                if cube.can_step(cell, a) {
                    cube.steps[a][cell] = id;
                }
            }
        }
        cube
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn num_cells(&self) -> usize {
        self.objects.len()
    }

    pub fn objects(&self) -> &[usize] {
        &self.objects
    }

    pub fn object(&self, cell: usize) -> usize {
        self.objects[cell]
    }

    pub fn step(&self, axis: usize, cell: usize) -> usize {
        self.steps[axis][cell]
    }

    pub fn stride(&self, axis: usize) -> usize {
        self.shape[axis + 1..].iter().product()
    }

    pub fn coords(&self, mut cell: usize) -> Vec<usize> {
        let mut out = vec![0; self.shape.len()];
        for a in (0..self.shape.len()).rev() {
            out[a] = cell % self.shape[a];
            cell /= self.shape[a];
        }
        out
    }

    pub fn index(&self, coords: &[usize]) -> usize {
        coords.iter().zip(&self.shape).fold(0, |acc, (&x, &n)| acc * n + x)
    }

    pub fn can_step(&self, cell: usize, axis: usize) -> bool {
        (cell / self.stride(axis)) % self.shape[axis] + 1 < self.shape[axis]
    }

    /// The composite from `from` to `to`, which must dominate it coordinatewise.
    pub fn map_between(&self, c: &FiniteWaldhausenCategory, from: &[usize], to: &[usize]) -> usize {
        let mut cur = from.to_vec();
        let mut acc = c.identity(self.objects[self.index(from)]);
        for a in 0..self.shape.len() {
            while cur[a] < to[a] {
                let s = self.steps[a][self.index(&cur)];
                acc = c.comp(s, acc);
                cur[a] += 1;
            }
        }
        acc
    }

    /// Precomposition with the face map skipping `t` on `axis`.
    pub fn delete(&self, c: &FiniteWaldhausenCategory, axis: usize, t: usize) -> Cube {
        let inner = self.stride(axis);
        let old = |u: usize| if u >= t { u + 1 } else { u };
        self.reindex(axis, self.shape[axis] - 1, old, |o, u| {
            if u + 1 == t {
                c.comp(self.steps[axis][o + inner], self.steps[axis][o])
            } else {
                self.steps[axis][o]
            }
        })
    }

    /// Precomposition with the degeneracy hitting `t` twice on `axis`.
    pub fn duplicate(&self, c: &FiniteWaldhausenCategory, axis: usize, t: usize) -> Cube {
        let old = |u: usize| if u > t { u - 1 } else { u };
        self.reindex(axis, self.shape[axis] + 1, old, |o, u| {
            if u == t {
                c.identity(self.objects[o])
            } else {
                self.steps[axis][o]
            }
        })
    }

    /// Cube with `axis` resized to `len`, position `u` reading old position
    /// `old(u)`. Steps off `axis` are copied; steps on it come from `step(old cell, u)`.
    fn reindex(&self, axis: usize, len: usize, old: impl Fn(usize) -> usize, step: impl Fn(usize, usize) -> usize) -> Cube {
        let inner = self.stride(axis);
        let outer: usize = self.shape[..axis].iter().product();
        let n_old = self.shape[axis];
        let mut shape = self.shape.clone();
        shape[axis] = len;
        let cells = outer * len * inner;
        let mut objects = Vec::with_capacity(cells);
        let mut steps = vec![Vec::with_capacity(cells); shape.len()];
        for hi in 0..outer {
            for u in 0..len {
                let base = hi * n_old * inner + old(u) * inner;
                for lo in 0..inner {
                    let o = base + lo;
                    objects.push(self.objects[o]);
                    for (a, st) in steps.iter_mut().enumerate() {
                        st.push(if a != axis {
                            self.steps[a][o]
                        } else if u + 1 < len {
                            step(o, u)
                        } else {
                            NO_STEP
                        });
                    }
                }
            }
        }
        Cube { shape, objects, steps }
    }

    /// Stacks cubes of equal shape along a new leading axis, joined by the
    /// given componentwise maps `links[k]: cubes[k] -> cubes[k + 1]`.
    pub fn stack(cubes: &[&Cube], links: &[&[usize]]) -> Cube {
        let base = cubes[0];
        let per = base.num_cells();
        let mut shape = vec![cubes.len()];
        shape.extend_from_slice(&base.shape);
        let mut objects = Vec::with_capacity(per * cubes.len());
        let mut steps = vec![vec![NO_STEP; per * cubes.len()]; shape.len()];
        for (k, cube) in cubes.iter().enumerate() {
            objects.extend_from_slice(&cube.objects);
            for a in 0..base.shape.len() {
                steps[a + 1][k * per..(k + 1) * per].copy_from_slice(&cube.steps[a]);
            }
            if k + 1 < cubes.len() {
                steps[0][k * per..(k + 1) * per].copy_from_slice(links[k]);
            }
        }
        Cube { shape, objects, steps }
    }

    /// Slice at position `k` of axis 0, dropping that axis.
    pub fn layer(&self, k: usize) -> Cube {
        let per: usize = self.shape[1..].iter().product();
        Cube {
            shape: self.shape[1..].to_vec(),
            objects: self.objects[k * per..(k + 1) * per].to_vec(),
            steps: self.steps[1..].iter().map(|s| s[k * per..(k + 1) * per].to_vec()).collect(),
        }
    }

    /// Components of the leading-axis step out of layer `k`.
    pub fn link(&self, k: usize) -> &[usize] {
        let per: usize = self.shape[1..].iter().product();
        &self.steps[0][k * per..(k + 1) * per]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::waldhausen::families::vect_gf;

    #[test]
    fn faces_and_degeneracies_of_a_line() {
        let c = vect_gf(2, 1).unwrap();
        let z = c.from_zero(1);
        let id = c.identity(1);
        // 0 -> F2 -> F2
        let line = Cube::new(vec![3], vec![0, 1, 1], vec![vec![z, id, NO_STEP]]);
        let d1 = line.delete(&c, 0, 1);
        assert_eq!(d1, Cube::new(vec![2], vec![0, 1], vec![vec![z, NO_STEP]]));
        let s0 = d1.duplicate(&c, 0, 0);
        assert_eq!(s0, Cube::new(vec![3], vec![0, 0, 1], vec![vec![c.identity(0), z, NO_STEP]]));
        assert_eq!(s0.delete(&c, 0, 0), d1);
        assert_eq!(line.map_between(&c, &[0], &[2]), z);
        let st = Cube::stack(&[&d1, &d1], &[&[c.identity(0), id]]);
        assert_eq!(st.layer(1), d1);
        assert_eq!(st.link(0), &[c.identity(0), id]);
    }
}
