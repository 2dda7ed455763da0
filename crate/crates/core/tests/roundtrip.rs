use proptest::prelude::*;

use innerpost::catalog;
use innerpost::document::{parse_document, render_document, Document};
use innerpost::group::GroupMap;
use innerpost::lie::LieAlgebra;
use innerpost::postgroup::{enumerate_rb_operators, from_rb_group, PostGroup};
use innerpost::postlie::{LinearMap, PostLieAlgebra};
use innerpost::scalar::GaussianRational;

fn scalar() -> impl Strategy<Value = GaussianRational> {
    (-4i64..=4, 1i64..=3, -4i64..=4, 1i64..=3).prop_map(|(a, b, c, d)| GaussianRational::complex(a, b, c, d))
}

fn vectors(n: usize, count: usize) -> impl Strategy<Value = Vec<Vec<GaussianRational>>> {
    prop::collection::vec(prop::collection::vec(scalar(), n), count)
}

fn lie_doc() -> impl Strategy<Value = Document> {
    (1usize..=4).prop_flat_map(|n| {
        (vectors(n, n * (n - 1) / 2), vectors(n, n * n), vectors(n, n), 0usize..3).prop_map(
            move |(upper, tri, map, kind)| {
                let mut it = upper.into_iter();
                let l = LieAlgebra::from_upper(n, |_, _| it.next().unwrap()).unwrap();
                match kind {
                    0 => Document::Lie(l),
                    1 => Document::PostLie {
                        product: PostLieAlgebra::from_fn(l, |i, j| tri[i * n + j].clone()).unwrap(),
                        witness: None,
                    },
                    _ => Document::RbLie { algebra: l, map: LinearMap::from_images(&map) },
                }
            },
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lie_documents_round_trip(doc in lie_doc()) {
        let text = render_document(&doc);
        prop_assert_eq!(parse_document(&text).unwrap(), doc);
    }

    #[test]
    fn cyclic_products_round_trip(dims in prop::collection::vec(1usize..=4, 1..=3), map_seed in any::<u64>()) {
        let g = catalog::product_of_cyclic(&dims);
        let n = g.order();
        let map = GroupMap((0..n).map(|a| ((map_seed >> (a % 60)) as usize + a) % n).collect());
        for doc in [
            Document::Group(g.clone()),
            Document::PostGroup(PostGroup::trivial(g.clone())),
            Document::RbGroup { group: g.clone(), map },
        ] {
            let text = render_document(&doc);
            prop_assert_eq!(parse_document(&text).unwrap(), doc);
        }
    }
}

#[test]
fn named_groups_and_enumerated_operators_round_trip() {
    for g in [catalog::s3(), catalog::d4(), catalog::dihedral(5)] {
        for b in enumerate_rb_operators(&g, 10_000_000).unwrap() {
            let pg = from_rb_group(&g, &b).unwrap();
            for doc in [Document::PostGroup(pg.clone()), Document::RbGroup { group: g.clone(), map: b.clone() }] {
                let text = render_document(&doc);
                assert_eq!(parse_document(&text).unwrap(), doc, "{text}");
            }
        }
    }
}

#[test]
fn permutation_generators() {
    let z2 = parse_document("group\ndegree 2\ngen 1 0\n").unwrap();
    assert_eq!(z2.group().unwrap().order(), 2);
    let s3 = parse_document("group\ndegree 3\ngen 1 0 2\ngen 1 2 0\n").unwrap();
    assert_eq!(s3.group().unwrap().order(), 6);
    let d4 = parse_document("group\ndegree 4\ngen 1 2 3 0\ngen 2 1 0 3\n").unwrap();
    let g = d4.group().unwrap();
    assert_eq!(g.order(), 8);
    assert_eq!(g.center().len(), 2);
}

#[test]
fn sl2_documents_parse_to_catalog_objects() {
    let dir = std::path::PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data");
    let post = parse_document(&std::fs::read_to_string(dir.join("sl2.post")).unwrap()).unwrap();
    assert_eq!(post, Document::PostLie { product: catalog::sl2_post_lie(), witness: None });
    let rb = parse_document(&std::fs::read_to_string(dir.join("sl2.rb")).unwrap()).unwrap();
    assert_eq!(rb, Document::RbLie { algebra: catalog::sl2(), map: catalog::sl2_rota_baxter() });
    let s3 = parse_document(&std::fs::read_to_string(dir.join("s3.grp")).unwrap()).unwrap();
    assert_eq!(s3.group().unwrap().order(), 6);
}
