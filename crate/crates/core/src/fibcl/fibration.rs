use std::collections::HashMap;
use std::sync::Arc;

use super::StrictAction;
use crate::andre::DEFAULT_COMMA_GUARD;
use crate::error::{Error, Result};
use crate::fincat::{comma_under, Comma, FinCat, FinFunctor, Morphism, Skeleton};
use crate::natsys::NaturalSystem;

/// The Grothendieck construction ∫G → B of a strict action, with its cleavage.
///
/// Objects are pairs (b, x ∈ G(b)). A morphism (b, x) → (b', x') is a pair (β, g) with
/// β: b → b' and g: x → G(β)(x'); it is stored with its target x' since G(β) need not be
/// injective on objects.
#[derive(Clone, Debug)]
pub struct Fibration {
    pub action: StrictAction,
    pub total: Arc<FinCat>,
    pub u: FinFunctor,
    objects: Vec<(u32, u32)>,
    object_index: HashMap<(u32, u32), u32>,
    /// (β, x', g)
    morphisms: Vec<(u32, u32, u32)>,
    morphism_index: HashMap<(u32, u32, u32), u32>,
}

pub fn grothendieck(action: &StrictAction) -> Result<Fibration> {
    let b = action.base().clone();
    let mut objects = Vec::new();
    for o in 0..b.num_objects() as u32 {
        objects.extend((0..action.fiber(o).num_objects() as u32).map(|x| (o, x)));
    }
    let object_index: HashMap<(u32, u32), u32> = objects.iter().enumerate().map(|(i, &k)| (k, i as u32)).collect();
    let mut morphisms = Vec::new();
    for beta in 0..b.num_morphisms() as u32 {
        let (src, tgt) = (b.src(beta), b.tgt(beta));
        let (fs, gb) = (action.fiber(src), action.map(beta));
        for x2 in 0..action.fiber(tgt).num_objects() as u32 {
            for &g in fs.incoming(gb.object(x2)) {
                morphisms.push((beta, x2, g));
            }
        }
    }
    let morphism_index: HashMap<(u32, u32, u32), u32> =
        morphisms.iter().enumerate().map(|(i, &k)| (k, i as u32)).collect();
    let mut counts: HashMap<(u32, u32), usize> = HashMap::new();
    for &(beta, _, g) in &morphisms {
        *counts.entry((beta, g)).or_default() += 1;
    }
    let object_names = objects
        .iter()
        .map(|&(o, x)| format!("({},{})", b.object_name(o), action.fiber(o).object_name(x)))
        .collect();
    let skel_morphisms = morphisms
        .iter()
        .map(|&(beta, x2, g)| {
            let (src, tgt) = (b.src(beta), b.tgt(beta));
            let fs = action.fiber(src);
            let mut name = format!("({},{})", b.name(beta), fs.name(g));
            if counts[&(beta, g)] > 1 {
                name.push_str(&format!("->{}", action.fiber(tgt).object_name(x2)));
            }
            Morphism { name, src: object_index[&(src, fs.src(g))], tgt: object_index[&(tgt, x2)] }
        })
        .collect();
    let identities = objects
        .iter()
        .map(|&(o, x)| morphism_index[&(b.identity(o), x, action.fiber(o).identity(x))])
        .collect();
    let total = FinCat::construct(Skeleton { objects: object_names, morphisms: skel_morphisms, identities }, |second, first| {
        let (beta, _, g) = morphisms[first as usize];
        let (beta2, x3, g2) = morphisms[second as usize];
        let fiber = action.fiber(b.src(beta));
        let h = fiber.compose(action.map(beta).morphism(g2), g);
        Ok(morphism_index[&(b.compose(beta2, beta), x3, h)])
    })?;
    let total = Arc::new(total);
    let u = FinFunctor::new(
        total.clone(),
        b,
        objects.iter().map(|o| o.0).collect(),
        morphisms.iter().map(|m| m.0).collect(),
    )?;
    Ok(Fibration { action: action.clone(), total, u, objects, object_index, morphisms, morphism_index })
}

/// E_b with its inclusion, the comma b/u, the comparison j_b and its retraction R_b.
#[derive(Clone, Debug)]
pub struct FiberData {
    pub fiber: Arc<FinCat>,
    pub comma: Comma,
    pub i: FinFunctor,
    pub j: FinFunctor,
    pub r: FinFunctor,
}

impl Fibration {
    pub fn base(&self) -> &Arc<FinCat> {
        self.action.base()
    }

    /// The object (b, x).
    pub fn object(&self, b: u32, x: u32) -> u32 {
        self.object_index[&(b, x)]
    }

    pub fn object_pair(&self, e: u32) -> (u32, u32) {
        self.objects[e as usize]
    }

    /// The morphism (β, g) with target (tgt β, x').
    pub fn morphism(&self, beta: u32, x2: u32, g: u32) -> Option<u32> {
        self.morphism_index.get(&(beta, x2, g)).copied()
    }

    /// (β, x', g) of a morphism.
    pub fn morphism_triple(&self, k: u32) -> (u32, u32, u32) {
        self.morphisms[k as usize]
    }

    /// The chosen cartesian lift of β: b → b' at e over b': (β, id): (b, G(β)x') → e.
    pub fn lift(&self, beta: u32, e: u32) -> Result<u32> {
        let (b2, x2) = self.object_pair(e);
        let base = self.base();
        if base.tgt(beta) != b2 {
            return Err(Error::InvalidArgument(format!("{} does not end over {}", base.name(beta), base.object_name(b2))));
        }
        let fiber = self.action.fiber(base.src(beta));
        let x = self.action.map(beta).object(x2);
        Ok(self.morphism_index[&(beta, x2, fiber.identity(x))])
    }

    /// Cartesian morphisms of a Grothendieck construction are those (β, g) with g invertible.
    pub fn is_cartesian(&self, k: u32) -> bool {
        let (beta, _, g) = self.morphism_triple(k);
        self.action.fiber(self.base().src(beta)).is_iso(g)
    }

    pub fn fiber_data(&self, b: u32) -> Result<FiberData> {
        self.fiber_data_guarded(b, DEFAULT_COMMA_GUARD)
    }

    pub fn fiber_data_guarded(&self, b: u32, guard: usize) -> Result<FiberData> {
        let base = self.base().clone();
        let fiber = self.action.fiber(b).clone();
        let comma = comma_under(&self.u, b, guard)?;
        let idb = base.identity(b);
        let i_mor: Vec<u32> =
            (0..fiber.num_morphisms() as u32).map(|g| self.morphism_index[&(idb, fiber.tgt(g), g)]).collect();
        let i_obj: Vec<u32> = (0..fiber.num_objects() as u32).map(|x| self.object(b, x)).collect();
        let i = FinFunctor::new(fiber.clone(), self.total.clone(), i_obj.clone(), i_mor.clone())?;
        let j_obj: Vec<u32> = i_obj.iter().map(|&e| comma.object_id(e, idb).expect("fiber object in comma")).collect();
        let j_mor = (0..fiber.num_morphisms() as u32)
            .map(|g| comma.morphism(j_obj[fiber.src(g) as usize], i_mor[g as usize]).expect("fiber morphism in comma"))
            .collect();
        let j = FinFunctor::new(fiber.clone(), comma.cat.clone(), j_obj, j_mor)?;
        let r_obj = comma
            .objects()
            .iter()
            .map(|&(e, phi)| self.action.map(phi).object(self.object_pair(e).1))
            .collect();
        let r_mor = (0..comma.cat.num_morphisms() as u32)
            .map(|k| {
                let phi1 = comma.object(comma.cat.src(k)).1;
                let (_, _, g) = self.morphism_triple(comma.q.morphism(k));
                self.action.map(phi1).morphism(g)
            })
            .collect();
        let r = FinFunctor::new(comma.cat.clone(), fiber.clone(), r_obj, r_mor)?;
        let data = FiberData { fiber, comma, i, j, r };
        data.check_adjunction(self)?;
        Ok(data)
    }

    /// D_b = D∘F(i_b∘R_b) on b/u, checked against D_b∘F j_b = D∘F i_b.
    pub fn db_system(&self, d: &NaturalSystem, data: &FiberData) -> Result<NaturalSystem> {
        if **d.base() != *self.total {
            return Err(Error::NotAFunctor("natural system does not live on the total category".into()));
        }
        let db = d.pullback(&data.r.then(&data.i)?)?;
        if db.pullback(&data.j)? != d.pullback(&data.i)? {
            return Err(Error::NotAFibration("D_b restricted along j_b differs from D on the fiber".into()));
        }
        Ok(db)
    }
}

impl FiberData {
    /// The counit of j_b ⊣ R_b at a comma object: the cartesian lift, viewed in b/u.
    pub fn counit(&self, fib: &Fibration, o: u32) -> Result<u32> {
        let (e, phi) = self.comma.object(o);
        let lift = fib.lift(phi, e)?;
        let anchor = self.j.object(self.r.object(o));
        self.comma
            .morphism(anchor, lift)
            .ok_or_else(|| Error::NotAFibration(format!("lift at comma object {o} is not a comma morphism")))
    }

    /// R_b∘j_b = Id on the nose, the counit is natural and both triangle identities hold.
    fn check_adjunction(&self, fib: &Fibration) -> Result<()> {
        let rj = self.j.then(&self.r)?;
        if !rj.is_identity() {
            return Err(Error::NotAFibration("R_b∘j_b is not the identity".into()));
        }
        let c = &*self.comma.cat;
        let eps = (0..c.num_objects() as u32).map(|o| self.counit(fib, o)).collect::<Result<Vec<u32>>>()?;
        for k in 0..c.num_morphisms() as u32 {
            let jr = self.j.morphism(self.r.morphism(k));
            if c.compose(eps[c.tgt(k) as usize], jr) != c.compose(k, eps[c.src(k) as usize]) {
                return Err(Error::NotAFibration(format!("counit is not natural at {}", c.name(k))));
            }
        }
        for x in 0..self.fiber.num_objects() as u32 {
            if !c.is_identity(eps[self.j.object(x) as usize]) {
                return Err(Error::NotAFibration("counit at j_b(x) is not an identity".into()));
            }
        }
        for (o, &e) in eps.iter().enumerate() {
            if !self.fiber.is_identity(self.r.morphism(e)) {
                return Err(Error::NotAFibration(format!("R_b of the counit at comma object {o} is not an identity")));
            }
        }
        Ok(())
    }
}
