//! Catalog of precomputed maximal orders, loaded from a JSON file and
//! re-verified on load.

use crate::arith::{Int, Rat};
use crate::error::{Error, Result};
use crate::quaternion::{QAlgebra, QOrder, Quat};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;

#[derive(Debug, Serialize, Deserialize)]
pub struct CatalogFile {
    pub entries: Vec<CatalogEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CatalogEntry {
    #[serde(rename = "D")]
    pub d: i64,
    pub a: i64,
    pub b: i64,
    /// Four basis elements, each as four [num, den] coordinates over 1, i, j, ij.
    pub basis: [[[i64; 2]; 4]; 4],
}

/// Read-only map from discriminant to a verified maximal order.
#[derive(Debug)]
pub struct OrderCatalog {
    orders: BTreeMap<i64, QOrder>,
}

/// Orders shipped with the crate, for the discriminants the worked examples
/// use most.
pub const BUILTIN_CATALOG: &str = include_str!("../data/catalog.json");

impl OrderCatalog {
    pub fn from_json(json: &str) -> Result<Self> {
        let file: CatalogFile =
            serde_json::from_str(json).map_err(|e| Error::Catalog(format!("bad catalog JSON: {e}")))?;
        let mut orders = BTreeMap::new();
        for entry in file.entries {
            let algebra = QAlgebra::from_ints(entry.a, entry.b)
                .map_err(|e| Error::Catalog(format!("entry D={}: {e}", entry.d)))?;
            let basis: [Quat; 4] = entry.basis.map(|coords| {
                Quat::new(coords.map(|[num, den]| Rat::new(Int::from(num), Int::from(den))))
            });
            let order = QOrder::new(algebra, basis)
                .map_err(|e| Error::Catalog(format!("entry D={}: {e}", entry.d)))?;
            if !order.is_maximal() {
                return Err(Error::Catalog(format!(
                    "entry D={} has disc {} and is not maximal",
                    entry.d,
                    order.disc()
                )));
            }
            if order.disc() != &Int::from(entry.d) {
                return Err(Error::Catalog(format!(
                    "entry D={} has discriminant {}",
                    entry.d,
                    order.disc()
                )));
            }
            orders.insert(entry.d, order);
        }
        Ok(OrderCatalog { orders })
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn builtin() -> Self {
        Self::from_json(BUILTIN_CATALOG).expect("builtin catalog must validate")
    }

    pub fn get(&self, d: i64) -> Option<&QOrder> {
        self.orders.get(&d)
    }

    pub fn discriminants(&self) -> impl Iterator<Item = i64> + '_ {
        self.orders.keys().copied()
    }
}
