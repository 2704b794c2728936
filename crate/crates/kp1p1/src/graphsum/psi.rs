//! Intersection numbers `<tau_{a_1} ... tau_{a_n}>_g` of psi classes on moduli of curves.

use crate::error::{Error, Result};
use crate::exactseries::scalar::{frac, int, parse, to_text, Scalar};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;
use std::sync::RwLock;

type Key = (u32, Vec<u32>);

fn double_factorial(n: i64) -> Scalar {
    let mut acc = Scalar::one();
    let mut k = n;
    while k > 1 {
        acc *= int(k);
        k -= 2;
    }
    acc
}

fn dimension_ok(g: u32, a: &[u32]) -> bool {
    let n = a.len() as i64;
    let total: i64 = a.iter().map(|&x| x as i64).sum();
    2 * g as i64 - 2 + n > 0 && total == 3 * g as i64 - 3 + n
}

/// Memoized psi integrals. Reads are shared, insertion is exclusive.
#[derive(Default, Debug)]
pub struct PsiCache {
    map: RwLock<BTreeMap<Key, Scalar>>,
}

impl PsiCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.map.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Checked entry point: the exponents must fill the dimension of the moduli space.
    pub fn integral(&self, g: u32, a: &[u32]) -> Result<Scalar> {
        if !dimension_ok(g, a) {
            return Err(Error::Dimension(format!("<{a:?}>_{g}")));
        }
        Ok(self.get(g, a))
    }

    /// Zero outside the stable range or off dimension.
    pub fn get(&self, g: u32, a: &[u32]) -> Scalar {
        if !dimension_ok(g, a) {
            return Scalar::zero();
        }
        let mut key = a.to_vec();
        key.sort_unstable();
        let key = (g, key);
        if let Some(v) = self.map.read().unwrap().get(&key) {
            return v.clone();
        }
        let v = self.compute(key.0, &key.1);
        self.map.write().unwrap().insert(key, v.clone());
        v
    }

    fn compute(&self, g: u32, a: &[u32]) -> Scalar {
        let n = a.len();
        if g == 0 && n == 3 {
            return Scalar::one();
        }
        if g == 1 && n == 1 {
            return frac(1, 24);
        }
        // String equation.
        if let Some(i) = a.iter().position(|&x| x == 0) {
            let mut rest = a.to_vec();
            rest.remove(i);
            let mut acc = Scalar::zero();
            for j in 0..rest.len() {
                if rest[j] > 0 {
                    let mut b = rest.clone();
                    b[j] -= 1;
                    acc += self.get(g, &b);
                }
            }
            return acc;
        }
        // Dilaton equation.
        if let Some(i) = a.iter().position(|&x| x == 1) {
            let mut rest = a.to_vec();
            rest.remove(i);
            return int(2 * g as i64 - 2 + rest.len() as i64) * self.get(g, &rest);
        }
        dvv(g, a, &|g, b| self.get(g, b))
    }

    /// All entries in key order.
    pub fn entries(&self) -> Vec<(u32, Vec<u32>, Scalar)> {
        self.map.read().unwrap().iter().map(|((g, a), v)| (*g, a.clone(), v.clone())).collect()
    }

    /// Every cached value recomputed through the DVV recursion alone, which contains
    /// the string and dilaton equations as its two lowest cases.
    pub fn cross_check(&self) -> Vec<(u32, Vec<u32>)> {
        let pure = PureDvv::default();
        self.entries()
            .into_iter()
            .filter(|(g, a, v)| pure.get(*g, a) != *v)
            .map(|(g, a, _)| (g, a))
            .collect()
    }

    /// Entries `X` for which `<tau_0 X>` or `<tau_1 X>`, evaluated by pure DVV, disagrees
    /// with the string or dilaton reduction to cached values.
    pub fn string_dilaton_violations(&self) -> Vec<(u32, Vec<u32>)> {
        let pure = PureDvv::default();
        let mut bad = Vec::new();
        for (g, a, v) in self.entries() {
            let mut with0 = a.clone();
            with0.push(0);
            let mut string = Scalar::zero();
            for j in 0..a.len() {
                if a[j] > 0 {
                    let mut b = a.clone();
                    b[j] -= 1;
                    string += self.get(g, &b);
                }
            }
            let mut with1 = a.clone();
            with1.push(1);
            let dilaton = int(2 * g as i64 - 2 + a.len() as i64) * &v;
            if pure.get(g, &with0) != string || pure.get(g, &with1) != dilaton {
                bad.push((g, a));
            }
        }
        bad
    }

    /// Append the entries not yet present in the file, one `g:a1,a2,...=value` per line.
    pub fn save(&self, path: &Path) -> Result<()> {
        let known = load_map(path)?;
        let mut fresh = String::new();
        for ((g, a), v) in self.map.read().unwrap().iter() {
            if !known.contains_key(&(*g, a.clone())) {
                let list: Vec<String> = a.iter().map(|x| x.to_string()).collect();
                fresh.push_str(&format!("{g}:{}={}\n", list.join(","), to_text(v)));
            }
        }
        if fresh.is_empty() {
            return Ok(());
        }
        if let Some(dir) = path.parent() {
            std::fs::create_dir_all(dir).map_err(|e| Error::Other(e.to_string()))?;
        }
        let mut f = std::fs::OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .map_err(|e| Error::Other(e.to_string()))?;
        f.write_all(fresh.as_bytes()).map_err(|e| Error::Other(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        Ok(PsiCache { map: RwLock::new(load_map(path)?) })
    }
}

fn load_map(path: &Path) -> Result<BTreeMap<Key, Scalar>> {
    let mut map = BTreeMap::new();
    let Ok(text) = std::fs::read_to_string(path) else { return Ok(map) };
    for line in text.lines().filter(|l| !l.trim().is_empty()) {
        let bad = || Error::Other(format!("malformed psi cache line: {line}"));
        let (lhs, v) = line.split_once('=').ok_or_else(bad)?;
        let (g, a) = lhs.split_once(':').ok_or_else(bad)?;
        let g: u32 = g.parse().map_err(|_| bad())?;
        let a: Vec<u32> = if a.is_empty() {
            Vec::new()
        } else {
            a.split(',').map(|x| x.parse().map_err(|_| bad())).collect::<Result<_>>()?
        };
        let v = parse(v).ok_or_else(bad)?;
        if !dimension_ok(g, &a) {
            return Err(bad());
        }
        map.insert((g, a), v);
    }
    Ok(map)
}

/// One step of the DVV recursion on the first exponent.
fn dvv(g: u32, a: &[u32], get: &dyn Fn(u32, &[u32]) -> Scalar) -> Scalar {
    let k = a[0] as i64 - 1;
    let rest = &a[1..];
    let mut acc = Scalar::zero();
    for j in 0..rest.len() {
        let kj = rest[j] as i64;
        let mut b: Vec<u32> = rest.to_vec();
        let e = k + kj;
        if e < 0 {
            continue;
        }
        b[j] = e as u32;
        acc += double_factorial(2 * k + 2 * kj + 1) / double_factorial(2 * kj - 1) * get(g, &b);
    }
    let half = frac(1, 2);
    for r in 0..=(k - 1).max(-1) {
        let s = k - 1 - r;
        if s < 0 {
            continue;
        }
        let w = double_factorial(2 * r + 1) * double_factorial(2 * s + 1) * &half;
        if g > 0 {
            let mut b = vec![r as u32, s as u32];
            b.extend_from_slice(rest);
            acc += &w * get(g - 1, &b);
        }
        // Split the remaining markings between two components.
        let m = rest.len();
        for mask in 0..(1u32 << m) {
            let (mut i1, mut i2) = (vec![r as u32], vec![s as u32]);
            for (t, &x) in rest.iter().enumerate() {
                if mask & (1 << t) != 0 { i1.push(x) } else { i2.push(x) }
            }
            for g1 in 0..=g {
                let v1 = get(g1, &i1);
                if v1.is_zero() {
                    continue;
                }
                acc += &w * v1 * get(g - g1, &i2);
            }
        }
    }
    acc / double_factorial(2 * k + 3)
}

#[derive(Default)]
struct PureDvv {
    memo: RwLock<BTreeMap<Key, Scalar>>,
}

impl PureDvv {
    fn get(&self, g: u32, a: &[u32]) -> Scalar {
        if !dimension_ok(g, a) {
            return Scalar::zero();
        }
        let mut key = a.to_vec();
        key.sort_unstable_by(|x, y| y.cmp(x));
        if g == 0 && key == [0, 0, 0] {
            return Scalar::one();
        }
        if g == 1 && key == [1] {
            return frac(1, 24);
        }
        if let Some(v) = self.memo.read().unwrap().get(&(g, key.clone())) {
            return v.clone();
        }
        // Lead with the largest exponent so the recursion descends.
        let v = dvv(g, &key, &|g, b| self.get(g, b));
        self.memo.write().unwrap().insert((g, key), v.clone());
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn string_and_dilaton_on_cached_entries() {
        let c = PsiCache::new();
        c.get(3, &[2, 3, 4]);
        c.get(2, &[1, 2, 2, 2]);
        assert!(c.len() > 5);
        assert_eq!(c.string_dilaton_violations(), vec![]);
    }

    #[test]
    fn known_values() {
        let c = PsiCache::new();
        assert_eq!(c.integral(0, &[0, 0, 0]).unwrap(), int(1));
        assert_eq!(c.integral(1, &[1]).unwrap(), frac(1, 24));
        assert_eq!(c.integral(2, &[4]).unwrap(), frac(1, 1152));
        assert_eq!(c.integral(1, &[1, 1]).unwrap(), frac(1, 24));
        assert_eq!(c.integral(2, &[2, 3]).unwrap(), frac(29, 5760));
        assert_eq!(c.integral(3, &[7]).unwrap(), frac(1, 82944));
        assert!(c.integral(2, &[3]).is_err());
    }

    #[test]
    fn cached_entries_agree_with_pure_recursion() {
        let c = PsiCache::new();
        for a in [vec![4], vec![2, 3], vec![2, 2, 2], vec![1, 1, 1, 2, 2], vec![0, 2, 2, 3], vec![3, 3, 0, 0]] {
            c.get(2, &a);
        }
        c.get(3, &[2, 3, 4]);
        c.get(0, &[0, 0, 1, 1, 1]);
        assert!(c.len() >= 10, "{}", c.len());
        assert_eq!(c.cross_check(), Vec::<(u32, Vec<u32>)>::new());
    }

    #[test]
    fn persistence_round_trip() {
        let dir = std::env::temp_dir().join(format!("kp1p1-psi-{}", std::process::id()));
        let path = dir.join("psi.txt");
        let _ = std::fs::remove_file(&path);
        let c = PsiCache::new();
        c.get(2, &[2, 2, 2]);
        c.save(&path).unwrap();
        c.save(&path).unwrap();
        let d = PsiCache::load(&path).unwrap();
        assert_eq!(d.entries(), c.entries());
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
