//! Constructors for the ring catalog.

use super::descriptor::{IdealSpec, RingDescriptor};
use super::ideal::{quotient_tables, Ideal};
use super::{AlgebraStructure, Elem, Ring};
use crate::error::{Error, Result};

pub const DEFAULT_MAX_SIZE: usize = 4096;

#[derive(Debug, Clone, Copy)]
pub struct BuildOptions {
    pub max_size: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            max_size: DEFAULT_MAX_SIZE,
        }
    }
}

pub fn build_ring(desc: &RingDescriptor) -> Result<Ring> {
    build_ring_with(desc, &BuildOptions::default())
}

pub fn build_ring_with(desc: &RingDescriptor, opts: &BuildOptions) -> Result<Ring> {
    let size = planned_size(desc)?;
    if size > opts.max_size as u64 {
        return Err(Error::SizeOverflow {
            size,
            max: opts.max_size,
        });
    }
    build(desc)
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// The standard sweep list: every `zmod(n)`, every catalog field, each
/// one-field construction over every field, products of pairs of small
/// rings and a few radical quotients. Only entries with at most `max_size`
/// elements are returned, in a fixed order.
pub fn catalog(max_size: usize) -> Vec<RingDescriptor> {
    use RingDescriptor::*;
    let fields: Vec<RingDescriptor> = [2, 3]
        .into_iter()
        .map(Gf)
        .chain([Gf4])
        .chain([5, 7, 11, 13].into_iter().map(Gf))
        .collect();
    let b = |d: &RingDescriptor| Box::new(d.clone());
    let mut out: Vec<RingDescriptor> = (2..=256).map(ZMod).collect();
    out.extend(fields.iter().cloned());
    for k in &fields {
        out.push(Dual(b(k)));
        out.push(Anormal(b(k)));
        for n in 2..=4 {
            out.push(Trunc(b(k), n));
        }
        out.push(Upper2(b(k)));
        out.push(Mat2(b(k)));
    }
    let small = [ZMod(2), ZMod(3), Gf4, ZMod(4), Dual(b(&Gf(2))), ZMod(5)];
    for (i, x) in small.iter().enumerate() {
        for y in &small[i..] {
            out.push(Product(b(x), b(y)));
        }
    }
    for r in [ZMod(8), ZMod(9), Dual(b(&Gf(3))), Trunc(b(&Gf(2)), 3), Upper2(b(&Gf(2)))] {
        out.push(Quotient(b(&r), IdealSpec::Radical));
    }
    out.retain(|d| planned_size(d).is_ok_and(|s| s <= max_size as u64));
    out
}

fn field_size(k: &RingDescriptor) -> Result<u64> {
    match k {
        RingDescriptor::Gf(_) | RingDescriptor::Gf4 => planned_size(k),
        other => Err(Error::NotAField(other.to_string())),
    }
}

/// Validates parameters and returns the size the construction will have
/// (an upper bound for quotients), without materializing anything.
fn planned_size(desc: &RingDescriptor) -> Result<u64> {
    use RingDescriptor::*;
    let sat = |a: u64, e: u32| a.checked_pow(e).unwrap_or(u64::MAX);
    Ok(match desc {
        ZMod(n) => {
            if !(2..=256).contains(n) {
                return Err(Error::OutOfRange(format!("zmod({n}) needs 2 <= n <= 256")));
            }
            *n as u64
        }
        Gf(p) => {
            if !is_prime(*p) {
                return Err(Error::NotPrime(*p));
            }
            if *p > 13 {
                return Err(Error::OutOfRange(format!("gf({p}) needs p <= 13")));
            }
            *p as u64
        }
        Gf4 => 4,
        Dual(k) | Anormal(k) => sat(field_size(k)?, 2),
        Trunc(k, n) => {
            if !(2..=4).contains(n) {
                return Err(Error::OutOfRange(format!("trunc(K,{n}) needs 2 <= n <= 4")));
            }
            sat(field_size(k)?, *n)
        }
        Upper2(k) => sat(field_size(k)?, 3),
        Mat2(k) => sat(field_size(k)?, 4),
        Product(a, b) => planned_size(a)?.saturating_mul(planned_size(b)?),
        Quotient(r, _) => planned_size(r)?,
    })
}

fn build(desc: &RingDescriptor) -> Result<Ring> {
    use RingDescriptor::*;
    match desc {
        ZMod(n) => Ok(modular(desc.clone(), *n as usize, None)),
        Gf(p) => {
            let field = modular(desc.clone(), *p as usize, None);
            Ok(self_structured(field))
        }
        Gf4 => Ok(self_structured(gf4())),
        Dual(k) => structure_algebra(desc, k, &["1", "e"], &[(0, 0, 0), (0, 1, 1), (1, 0, 1)], &[0]),
        Anormal(k) => structure_algebra(
            desc,
            k,
            &["1", "j"],
            &[(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)],
            &[0],
        ),
        Trunc(k, n) => {
            let names = &["1", "x", "x^2", "x^3"][..*n as usize];
            let n = *n as usize;
            let mut prods = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    if i + j < n {
                        prods.push((i, j, i + j));
                    }
                }
            }
            structure_algebra(desc, k, names, &prods, &[0])
        }
        // j1 = E11, j2 = E22, e = E12
        Upper2(k) => structure_algebra(
            desc,
            k,
            &["j1", "j2", "e"],
            &[(0, 0, 0), (0, 2, 2), (2, 1, 2), (1, 1, 1)],
            &[0, 1],
        ),
        Mat2(k) => {
            // basis E11, E12, E21, E22 at positions 2*i + j
            let mut prods = Vec::new();
            for i in 0..2 {
                for j in 0..2 {
                    for l in 0..2 {
                        prods.push((2 * i + j, 2 * j + l, 2 * i + l));
                    }
                }
            }
            structure_algebra(desc, k, &["e11", "e12", "e21", "e22"], &prods, &[0, 3])
        }
        Product(a, b) => Ok(product(desc.clone(), &build(a)?, &build(b)?)),
        Quotient(r, spec) => {
            let inner = build(r)?;
            let ideal = match spec {
                IdealSpec::Radical => inner.radical().clone(),
                IdealSpec::Generated(tokens) => {
                    let gens = tokens
                        .iter()
                        .map(|t| inner.parse_element(t))
                        .collect::<Result<Vec<_>>>()?;
                    Ideal::generated(&inner, &gens)
                }
            };
            if ideal.contains(inner.one()) {
                return Err(Error::NotAnIdeal(
                    "the ideal contains 1, quotient would be the zero ring".into(),
                ));
            }
            let (q, _) = quotient_tables(&inner, &ideal, desc.clone())?;
            Ok(q)
        }
    }
}

fn modular(desc: RingDescriptor, n: usize, structure: Option<AlgebraStructure>) -> Ring {
    let mut add = Vec::with_capacity(n * n);
    let mut mul = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            add.push(Elem::from_index((x + y) % n));
            mul.push(Elem::from_index((x * y) % n));
        }
    }
    let labels = (0..n).map(|i| i.to_string()).collect();
    Ring::from_tables(desc, labels, add, mul, Elem::from_index(0), Elem::from_index(1), structure)
}

/// GF(4) = {0, 1, w, w+1} with w² = w + 1; index = c0 + 2·c1.
fn gf4() -> Ring {
    let mul_poly = |x: usize, y: usize| {
        let (a0, a1, b0, b1) = (x & 1, x >> 1, y & 1, y >> 1);
        // (a0 + a1 w)(b0 + b1 w) = a0b0 + (a0b1 + a1b0) w + a1b1 (w + 1)
        let c0 = (a0 * b0 + a1 * b1) & 1;
        let c1 = (a0 * b1 + a1 * b0 + a1 * b1) & 1;
        c0 | (c1 << 1)
    };
    let mut add = Vec::with_capacity(16);
    let mut mul = Vec::with_capacity(16);
    for x in 0..4 {
        for y in 0..4 {
            add.push(Elem::from_index(x ^ y));
            mul.push(Elem::from_index(mul_poly(x, y)));
        }
    }
    let labels = ["0", "1", "w", "w+1"].iter().map(|s| s.to_string()).collect();
    Ring::from_tables(
        RingDescriptor::Gf4,
        labels,
        add,
        mul,
        Elem::from_index(0),
        Elem::from_index(1),
        None,
    )
}

/// A field viewed as a one-dimensional algebra over itself.
fn self_structured(mut field: Ring) -> Ring {
    field.structure = Some(AlgebraStructure {
        field: field.descriptor.clone(),
        embedding: field.elements().collect(),
        basis: vec![field.one()],
    });
    field
}

fn term_label(coeff: &str, coeff_is_one: bool, name: &str) -> String {
    if name == "1" {
        coeff.to_string()
    } else if coeff_is_one {
        name.to_string()
    } else if coeff.contains('+') {
        format!("({coeff}){name}")
    } else {
        format!("{coeff}{name}")
    }
}

/// K-algebra with basis `names`, where the product of two basis elements is
/// either zero or another basis element: `(i, j, k)` means `e_i e_j = e_k`.
/// `unit` lists the basis elements summing to the identity.
fn structure_algebra(
    desc: &RingDescriptor,
    field_desc: &RingDescriptor,
    names: &[&str],
    prods: &[(usize, usize, usize)],
    unit: &[usize],
) -> Result<Ring> {
    let field = build(field_desc)?;
    if !field_desc.is_field_entry() {
        return Err(Error::NotAField(field_desc.to_string()));
    }
    let q = field.size();
    let m = names.len();
    let size = q.pow(m as u32);

    let coords = |mut idx: usize| -> Vec<Elem> {
        (0..m)
            .map(|_| {
                let c = Elem::from_index(idx % q);
                idx /= q;
                c
            })
            .collect()
    };
    let index_of = |cs: &[Elem]| -> usize { cs.iter().rev().fold(0, |acc, c| acc * q + c.index()) };
    let all: Vec<Vec<Elem>> = (0..size).map(coords).collect();

    let mut add = Vec::with_capacity(size * size);
    let mut mul = Vec::with_capacity(size * size);
    let mut buf = vec![field.zero(); m];
    for x in &all {
        for y in &all {
            for k in 0..m {
                buf[k] = field.add(x[k], y[k]);
            }
            add.push(Elem::from_index(index_of(&buf)));
            buf.iter_mut().for_each(|c| *c = field.zero());
            for &(i, j, k) in prods {
                buf[k] = field.add(buf[k], field.mul(x[i], y[j]));
            }
            mul.push(Elem::from_index(index_of(&buf)));
        }
    }

    let labels = all
        .iter()
        .map(|cs| {
            let terms: Vec<String> = cs
                .iter()
                .zip(names)
                .filter(|(c, _)| **c != field.zero())
                .map(|(c, name)| term_label(field.label(*c), *c == field.one(), name))
                .collect();
            if terms.is_empty() {
                "0".to_string()
            } else {
                terms.join("+")
            }
        })
        .collect();

    let basis_elem = |i: usize| {
        let mut cs = vec![field.zero(); m];
        cs[i] = field.one();
        Elem::from_index(index_of(&cs))
    };
    let mut one_cs = vec![field.zero(); m];
    for &u in unit {
        one_cs[u] = field.one();
    }
    let one = Elem::from_index(index_of(&one_cs));
    let embedding = field
        .elements()
        .map(|k| {
            let cs: Vec<Elem> = one_cs
                .iter()
                .map(|&c| if c == field.one() { k } else { field.zero() })
                .collect();
            Elem::from_index(index_of(&cs))
        })
        .collect();
    let structure = AlgebraStructure {
        field: field_desc.clone(),
        embedding,
        basis: (0..m).map(basis_elem).collect(),
    };

    Ok(Ring::from_tables(
        desc.clone(),
        labels,
        add,
        mul,
        Elem::from_index(0),
        one,
        Some(structure),
    ))
}

/// Direct product; index = i₁ + |R₁|·i₂.
fn product(desc: RingDescriptor, r1: &Ring, r2: &Ring) -> Ring {
    let (n1, n2) = (r1.size(), r2.size());
    let n = n1 * n2;
    let split = |x: usize| (Elem::from_index(x % n1), Elem::from_index(x / n1));
    let join = |a: Elem, b: Elem| Elem::from_index(a.index() + n1 * b.index());
    let mut add = Vec::with_capacity(n * n);
    let mut mul = Vec::with_capacity(n * n);
    for x in 0..n {
        let (x1, x2) = split(x);
        for y in 0..n {
            let (y1, y2) = split(y);
            add.push(join(r1.add(x1, y1), r2.add(x2, y2)));
            mul.push(join(r1.mul(x1, y1), r2.mul(x2, y2)));
        }
    }
    let labels = (0..n)
        .map(|x| {
            let (a, b) = split(x);
            format!("({},{})", r1.label(a), r2.label(b))
        })
        .collect();

    let structure = match (r1.structure(), r2.structure()) {
        (Some(s1), Some(s2)) if s1.field == s2.field => Some(AlgebraStructure {
            field: s1.field.clone(),
            embedding: s1
                .embedding
                .iter()
                .zip(&s2.embedding)
                .map(|(&a, &b)| join(a, b))
                .collect(),
            basis: s1
                .basis
                .iter()
                .map(|&b| join(b, r2.zero()))
                .chain(s2.basis.iter().map(|&b| join(r1.zero(), b)))
                .collect(),
        }),
        _ => None,
    };

    Ring::from_tables(
        desc,
        labels,
        add,
        mul,
        join(r1.zero(), r2.zero()),
        join(r1.one(), r2.one()),
        structure,
    )
}
