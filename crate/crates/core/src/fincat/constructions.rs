use std::collections::HashMap;
use std::sync::Arc;

use super::{FinCat, FinFunctor, Morphism, Skeleton};
use crate::error::{Error, Result};

/// The factorization category F(C) together with the (f, α, β) description of each
/// of its morphisms: (α, β): f → β∘f∘α.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub base: Arc<FinCat>,
    pub cat: Arc<FinCat>,
    triples: Vec<(u32, u32, u32)>,
    index: HashMap<(u32, u32, u32), u32>,
}

impl Factorization {
    /// (f, α, β) of a morphism of F(C).
    pub fn triple(&self, m: u32) -> (u32, u32, u32) {
        self.triples[m as usize]
    }

    pub fn morphism(&self, f: u32, alpha: u32, beta: u32) -> Option<u32> {
        self.index.get(&(f, alpha, beta)).copied()
    }

    /// The functor F(C) → C^op × C, f ↦ (src f, tgt f), (α, β) ↦ (α, β).
    pub fn projection(&self) -> Result<FinFunctor> {
        let c = &*self.base;
        let target = Arc::new(product(&opposite(c)?, c)?);
        let (no, nm) = (c.num_objects() as u32, c.num_morphisms() as u32);
        let obj_map = (0..c.num_morphisms() as u32).map(|f| c.src(f) * no + c.tgt(f)).collect();
        let mor_map = self.triples.iter().map(|&(_, a, b)| a * nm + b).collect();
        FinFunctor::new(self.cat.clone(), target, obj_map, mor_map)
    }
}

pub fn factorization(base: Arc<FinCat>) -> Result<Factorization> {
    let c = &*base;
    let mut triples = Vec::new();
    let mut morphisms = Vec::new();
    for f in 0..c.num_morphisms() as u32 {
        for &alpha in c.incoming(c.src(f)) {
            let fa = c.compose(f, alpha);
            for &beta in c.outgoing(c.tgt(f)) {
                triples.push((f, alpha, beta));
                morphisms.push(Morphism {
                    name: format!("({},{}):{}", c.name(alpha), c.name(beta), c.name(f)),
                    src: f,
                    tgt: c.compose(beta, fa),
                });
            }
        }
    }
    let index: HashMap<(u32, u32, u32), u32> = triples.iter().enumerate().map(|(i, &t)| (t, i as u32)).collect();
    let identities = (0..c.num_morphisms() as u32)
        .map(|f| index[&(f, c.identity(c.src(f)), c.identity(c.tgt(f)))])
        .collect();
    let sk = Skeleton { objects: c.morphisms().iter().map(|m| m.name.clone()).collect(), morphisms, identities };
    let cat = FinCat::construct(sk, |second, first| {
        let (f, a, b) = triples[first as usize];
        let (_, a2, b2) = triples[second as usize];
        Ok(index[&(f, c.compose(a, a2), c.compose(b2, b))])
    })?;
    Ok(Factorization { base: base.clone(), cat: Arc::new(cat), triples, index })
}

/// F(u): F(E) → F(B), f ↦ u f, (α, β) ↦ (u α, u β).
pub fn factorization_functor(u: &FinFunctor, fe: &Factorization, fb: &Factorization) -> Result<FinFunctor> {
    if *fe.base != **u.source() || *fb.base != **u.target() {
        return Err(Error::NotAFunctor("factorization categories do not match the functor".into()));
    }
    let obj_map = u.morphism_map().to_vec();
    let mor_map = fe
        .triples
        .iter()
        .map(|&(f, a, b)| {
            fb.morphism(u.morphism(f), u.morphism(a), u.morphism(b))
                .ok_or_else(|| Error::NotAFunctor("image of a factorization morphism is missing".into()))
        })
        .collect::<Result<Vec<u32>>>()?;
    Ok(FinFunctor::new_unchecked(fe.cat.clone(), fb.cat.clone(), obj_map, mor_map))
}

/// A comma category b/u (under) or u/b (over) with its forgetful functor Q to E.
///
/// Objects are pairs (e, φ) with φ: b → u e (under) or φ: u e → b (over); a morphism is
/// an E-morphism g compatible with the φ's.
#[derive(Clone, Debug)]
pub struct Comma {
    pub cat: Arc<FinCat>,
    pub q: FinFunctor,
    pub under: bool,
    pub base_object: u32,
    objects: Vec<(u32, u32)>,
    object_index: HashMap<(u32, u32), u32>,
    morphism_index: HashMap<(u32, u32), u32>,
}

impl Comma {
    /// (e, φ) of a comma object.
    pub fn object(&self, o: u32) -> (u32, u32) {
        self.objects[o as usize]
    }

    pub fn object_id(&self, e: u32, phi: u32) -> Option<u32> {
        self.object_index.get(&(e, phi)).copied()
    }

    pub fn objects(&self) -> &[(u32, u32)] {
        &self.objects
    }

    /// The comma morphism given by g out of (under) or into (over) comma object `anchor`.
    pub fn morphism(&self, anchor: u32, g: u32) -> Option<u32> {
        self.morphism_index.get(&(anchor, g)).copied()
    }
}

/// b/u for a functor u: E → B.
pub fn comma_under(u: &FinFunctor, b: u32, size_guard: usize) -> Result<Comma> {
    comma(u, b, true, size_guard)
}

/// u/b for a functor u: E → B.
pub fn comma_over(u: &FinFunctor, b: u32, size_guard: usize) -> Result<Comma> {
    comma(u, b, false, size_guard)
}

fn comma(u: &FinFunctor, b: u32, under: bool, size_guard: usize) -> Result<Comma> {
    let (e_cat, b_cat) = (&**u.source(), &**u.target());
    if b as usize >= b_cat.num_objects() {
        return Err(Error::ObjectNotFound(format!("object index {b}")));
    }
    let mut objects = Vec::new();
    for e in 0..e_cat.num_objects() as u32 {
        let phis = if under { b_cat.hom(b, u.object(e)) } else { b_cat.hom(u.object(e), b) };
        objects.extend(phis.into_iter().map(|phi| (e, phi)));
    }
    let object_index: HashMap<(u32, u32), u32> =
        objects.iter().enumerate().map(|(i, &k)| (k, i as u32)).collect();
    // A morphism is keyed by (anchor object, g): the source for b/u, the target for u/b.
    let mut keys: Vec<(u32, u32)> = Vec::new();
    let mut morphisms = Vec::new();
    for (o, &(e, phi)) in objects.iter().enumerate() {
        let gs = if under { e_cat.outgoing(e) } else { e_cat.incoming(e) };
        for &g in gs {
            let other = if under {
                object_index[&(e_cat.tgt(g), b_cat.compose(u.morphism(g), phi))]
            } else {
                object_index[&(e_cat.src(g), b_cat.compose(phi, u.morphism(g)))]
            };
            keys.push((o as u32, g));
            let (src, tgt) = if under { (o as u32, other) } else { (other, o as u32) };
            morphisms.push(Morphism {
                name: format!("{}:({},{})", e_cat.name(g), e_cat.object_name(e), b_cat.name(phi)),
                src,
                tgt,
            });
        }
        if keys.len() > size_guard {
            return Err(Error::SizeGuard { what: "comma category".into(), size: keys.len(), limit: size_guard });
        }
    }
    let key_index: HashMap<(u32, u32), u32> = keys.iter().enumerate().map(|(i, &k)| (k, i as u32)).collect();
    let identities = objects.iter().enumerate().map(|(o, &(e, _))| key_index[&(o as u32, e_cat.identity(e))]).collect();
    let object_names = objects
        .iter()
        .map(|&(e, phi)| format!("({},{})", e_cat.object_name(e), b_cat.name(phi)))
        .collect();
    let mor_q: Vec<u32> = keys.iter().map(|k| k.1).collect();
    let cat = FinCat::construct(Skeleton { objects: object_names, morphisms, identities }, |second, first| {
        let g = e_cat.compose(keys[second as usize].1, keys[first as usize].1);
        let anchor = if under { keys[first as usize].0 } else { keys[second as usize].0 };
        Ok(key_index[&(anchor, g)])
    })?;
    let cat = Arc::new(cat);
    let obj_q = objects.iter().map(|o| o.0).collect();
    let q = FinFunctor::new_unchecked(cat.clone(), u.source().clone(), obj_q, mor_q);
    Ok(Comma { cat, q, under, base_object: b, objects, object_index, morphism_index: key_index })
}

/// C × D with objects and morphisms in row-major order.
pub fn product(c: &FinCat, d: &FinCat) -> Result<FinCat> {
    let (dn, dm) = (d.num_objects() as u32, d.num_morphisms() as u32);
    let mut objects = Vec::new();
    for a in c.objects() {
        for b in d.objects() {
            objects.push(format!("({a},{b})"));
        }
    }
    let mut morphisms = Vec::new();
    for f in c.morphisms() {
        for g in d.morphisms() {
            morphisms.push(Morphism {
                name: format!("({},{})", f.name, g.name),
                src: f.src * dn + g.src,
                tgt: f.tgt * dn + g.tgt,
            });
        }
    }
    let identities = (0..c.num_objects() as u32)
        .flat_map(|a| (0..dn).map(move |b| (a, b)))
        .map(|(a, b)| c.identity(a) * dm + d.identity(b))
        .collect();
    FinCat::construct(Skeleton { objects, morphisms, identities }, |x, y| {
        Ok(c.compose(x / dm, y / dm) * dm + d.compose(x % dm, y % dm))
    })
}

pub fn opposite(c: &FinCat) -> Result<FinCat> {
    let morphisms =
        c.morphisms().iter().map(|m| Morphism { name: m.name.clone(), src: m.tgt, tgt: m.src }).collect();
    let sk = Skeleton { objects: c.objects().to_vec(), morphisms, identities: c.identities().to_vec() };
    FinCat::construct(sk, |g, f| Ok(c.compose(f, g)))
}

/// Fully faithful and essentially surjective, decided exhaustively.
pub fn is_equivalence(phi: &FinFunctor) -> bool {
    let (s, t) = (&**phi.source(), &**phi.target());
    for a in 0..s.num_objects() as u32 {
        for b in 0..s.num_objects() as u32 {
            let hom = s.hom(a, b);
            let target_hom = t.hom(phi.object(a), phi.object(b));
            if hom.len() != target_hom.len() {
                return false;
            }
            let mut images: Vec<u32> = hom.iter().map(|&f| phi.morphism(f)).collect();
            images.sort_unstable();
            images.dedup();
            if images.len() != hom.len() {
                return false;
            }
        }
    }
    (0..t.num_objects() as u32).all(|y| {
        (0..s.num_objects() as u32).any(|a| t.hom(phi.object(a), y).into_iter().any(|f| t.is_iso(f)))
    })
}
