//! Builder specs (`name:key=value,...`) and list arguments.

use std::collections::BTreeMap;

use anyhow::{anyhow, bail, Context, Result};
use mgzz::builders::{
    brickwall_matchgates, fermi_hubbard_trotter, givens_ladder, random_mgzz_with, FHParams,
    Placement, ZzFlavor,
};
use mgzz::Circuit;

/// `brickwall:n=6,depth=4`, `mgzz:n=8,N=40,m=2,placement=layered,flavor=mixed`,
/// `givens:n=6,q=2`, `fermi-hubbard:n_sites=5,T=3,sites=1`, `identity:n=3`.
pub fn build(spec: &str, default_seed: u64) -> Result<Circuit> {
    let (name, rest) = spec.split_once(':').unwrap_or((spec, ""));
    let mut kv = Params::parse(rest)?;
    let seed = kv.take("seed")?.unwrap_or(default_seed);
    let circuit = match name {
        "identity" => Circuit::new(kv.need("n")?)?,
        "brickwall" => brickwall_matchgates(kv.need("n")?, kv.need("depth")?, seed)?,
        "givens" => givens_ladder(kv.need("n")?, kv.take("q")?.unwrap_or(1), seed)?,
        "mgzz" => {
            let placement = match kv.raw("placement").as_deref() {
                None | Some("random") => Placement::Random,
                Some("layered") => Placement::Layered,
                Some(other) => bail!("unknown placement {other:?}"),
            };
            let flavor = match kv.raw("flavor").as_deref() {
                None | Some("cphase") => ZzFlavor::AdjacentCphase,
                Some("mixed") => ZzFlavor::Mixed,
                Some(other) => bail!("unknown flavor {other:?}"),
            };
            random_mgzz_with(
                kv.need("n")?,
                kv.need("N")?,
                kv.take("m")?.unwrap_or(0),
                placement,
                flavor,
                seed,
            )?
        }
        "fermi-hubbard" | "fh" => fermi_hubbard_trotter(&fh_params(&mut kv, seed)?)?,
        other => bail!("unknown builder {other:?}"),
    };
    kv.finish()?;
    Ok(circuit)
}

fn fh_params(kv: &mut Params, seed: u64) -> Result<FHParams> {
    let d = FHParams::default();
    Ok(FHParams {
        n_sites: kv.take("n_sites")?.unwrap_or(d.n_sites),
        trotter_steps: kv.take("T")?.unwrap_or(d.trotter_steps),
        hopping: kv.take("J")?.unwrap_or(d.hopping),
        onsite: kv.take("U")?.unwrap_or(d.onsite),
        dt: kv.take("dt")?.unwrap_or(d.dt),
        interaction_sites: match kv.raw("sites") {
            Some(s) if s.is_empty() || s == "none" => Vec::new(),
            Some(s) => parse_list(&s)?,
            None => d.interaction_sites,
        },
        q: kv.take("q")?.unwrap_or(d.q),
        seed,
    })
}

struct Params(BTreeMap<String, String>);

impl Params {
    fn parse(text: &str) -> Result<Self> {
        let mut map = BTreeMap::new();
        // `sites=1;3` keeps list separators apart from pair separators.
        for pair in text.split(',').filter(|p| !p.is_empty()) {
            let (k, v) = pair
                .split_once('=')
                .ok_or_else(|| anyhow!("expected key=value, got {pair:?}"))?;
            map.insert(k.trim().to_string(), v.trim().replace(';', ","));
        }
        Ok(Params(map))
    }

    fn raw(&mut self, key: &str) -> Option<String> {
        self.0.remove(key)
    }

    fn take<T: std::str::FromStr>(&mut self, key: &str) -> Result<Option<T>>
    where
        T::Err: std::fmt::Display,
    {
        match self.0.remove(key) {
            None => Ok(None),
            Some(v) => v
                .parse()
                .map(Some)
                .map_err(|e| anyhow!("bad value for {key}: {v:?} ({e})")),
        }
    }

    fn need<T: std::str::FromStr>(&mut self, key: &str) -> Result<T>
    where
        T::Err: std::fmt::Display,
    {
        self.take(key)?
            .ok_or_else(|| anyhow!("builder needs {key}="))
    }

    fn finish(self) -> Result<()> {
        if let Some(k) = self.0.keys().next() {
            bail!("unknown builder parameter {k:?}");
        }
        Ok(())
    }
}

/// `3`, `3,4,5`, `3..5` (inclusive) or a mix like `1,4..6`.
pub fn parse_list<T>(text: &str) -> Result<Vec<T>>
where
    T: std::str::FromStr + Copy + TryFrom<u64>,
    T::Err: std::fmt::Display,
{
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if let Some((a, b)) = part.split_once("..") {
            let a: u64 = a.parse().with_context(|| format!("range start {a:?}"))?;
            let b: u64 = b.parse().with_context(|| format!("range end {b:?}"))?;
            for v in a..=b {
                out.push(T::try_from(v).map_err(|_| anyhow!("{v} out of range"))?);
            }
        } else {
            out.push(part.parse().map_err(|e| anyhow!("bad list item {part:?}: {e}"))?);
        }
    }
    Ok(out)
}

pub fn parse_floats(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| p.parse().with_context(|| format!("bad number {p:?}")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lists() {
        assert_eq!(parse_list::<usize>("3..5").unwrap(), vec![3, 4, 5]);
        assert_eq!(parse_list::<usize>("1,4..5").unwrap(), vec![1, 4, 5]);
        assert!(parse_list::<usize>("x").is_err());
        assert_eq!(parse_floats("0,1e-8").unwrap(), vec![0.0, 1e-8]);
    }

    #[test]
    fn builders() {
        assert_eq!(build("identity:n=3", 0).unwrap().len(), 0);
        let fh = build("fermi-hubbard:n_sites=5,T=3,sites=1", 0).unwrap();
        assert_eq!(fh.n(), 10);
        assert_eq!(fh.zz_count(), 3);
        let c = build("mgzz:n=5,N=20,m=2,flavor=mixed", 4).unwrap();
        assert_eq!(c.len(), 20);
        assert_eq!(build("brickwall:n=4,depth=2", 0).unwrap().len(), 3);
        assert!(build("brickwall:n=4", 0).is_err());
        assert!(build("brickwall:n=4,depth=2,bogus=1", 0).is_err());
        assert!(build("nope:n=3", 0).is_err());
        let two = build("fh:n_sites=4,T=1,sites=1;3", 0).unwrap();
        assert_eq!(two.zz_count(), 2);
    }

    #[test]
    fn seeds_are_deterministic() {
        let a = build("mgzz:n=5,N=20,m=2", 7).unwrap();
        let b = build("mgzz:n=5,N=20,m=2", 7).unwrap();
        let c = build("mgzz:n=5,N=20,m=2,seed=8", 7).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }
}
