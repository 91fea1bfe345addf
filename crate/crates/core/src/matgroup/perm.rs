use std::fmt;

pub const MAX_POINTS: usize = 8;

/// Permutation of `0..degree`, `degree <= 8`. `(p * q)(i) = p(q(i))`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    degree: u8,
    img: [u8; MAX_POINTS],
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        assert!(degree <= MAX_POINTS, "degree {degree} exceeds {MAX_POINTS}");
        let mut img = [0u8; MAX_POINTS];
        for (i, x) in img.iter_mut().enumerate() {
            *x = i as u8;
        }
        Perm {
            degree: degree as u8,
            img,
        }
    }

    /// From the image list `i -> images[i]`; `None` if not a bijection.
    pub fn from_images(images: &[usize]) -> Option<Self> {
        let n = images.len();
        if n > MAX_POINTS {
            return None;
        }
        let mut seen = [false; MAX_POINTS];
        let mut p = Self::identity(n);
        for (i, &x) in images.iter().enumerate() {
            if x >= n || seen[x] {
                return None;
            }
            seen[x] = true;
            p.img[i] = x as u8;
        }
        Some(p)
    }

    /// From disjoint cycles on `0..degree`.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Option<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        for c in cycles {
            for (k, &x) in c.iter().enumerate() {
                images[x] = c[(k + 1) % c.len()];
            }
        }
        Self::from_images(&images)
    }

    pub fn degree(&self) -> usize {
        self.degree as usize
    }

    pub fn apply(&self, i: usize) -> usize {
        self.img[i] as usize
    }

    pub fn compose(&self, q: &Perm) -> Perm {
        debug_assert_eq!(self.degree, q.degree);
        let mut out = *self;
        for i in 0..self.degree as usize {
            out.img[i] = self.img[q.img[i] as usize];
        }
        out
    }

    pub fn inverse(&self) -> Perm {
        let mut out = *self;
        for i in 0..self.degree as usize {
            out.img[self.img[i] as usize] = i as u8;
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        (0..self.degree as usize).all(|i| self.img[i] as usize == i)
    }

    pub fn order(&self) -> u64 {
        let mut seen = [false; MAX_POINTS];
        let mut order = 1u64;
        for start in 0..self.degree as usize {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.img[i] as usize;
                len += 1;
            }
            order = num_integer::lcm(order, len);
        }
        order
    }

    /// All permutations of `0..degree` in lexicographic order of images.
    pub fn all(degree: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut current: Vec<usize> = (0..degree).collect();
        loop {
            out.push(Perm::from_images(&current).expect("bijection"));
            // next permutation
            let Some(i) = (1..degree).rev().find(|&i| current[i - 1] < current[i]) else {
                break;
            };
            let j = (i..degree).rev().find(|&j| current[j] > current[i - 1]).expect("successor");
            current.swap(i - 1, j);
            current[i..].reverse();
        }
        out
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &self.img[..self.degree as usize])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_group_sizes() {
        assert_eq!(Perm::all(1).len(), 1);
        assert_eq!(Perm::all(4).len(), 24);
        assert_eq!(Perm::all(5).len(), 120);
    }

    #[test]
    fn composition_applies_right_first() {
        let p = Perm::from_cycles(3, &[&[0, 1]]).unwrap();
        let q = Perm::from_cycles(3, &[&[1, 2]]).unwrap();
        assert_eq!(p.compose(&q).apply(1), 2);
        assert_eq!(p.compose(&q).apply(0), 1);
        assert_eq!(p.compose(&q).order(), 3);
        assert!(p.compose(&p.inverse()).is_identity());
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Perm::from_images(&[0, 0]).is_none());
        assert!(Perm::from_images(&[0, 2]).is_none());
    }
}
