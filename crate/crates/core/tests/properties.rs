use depdist::estimation::{select, Criterion, FitOptions};
use depdist::models::{ModelId, ModelParams, Observations, Pmf};
use depdist::omega::omega;
use depdist::sampling::{generate, SamplerConfig};
use depdist::treebank::{DepTree, DistanceSample};
use proptest::prelude::*;

fn truncated_params() -> impl Strategy<Value = ModelParams> {
    let q = 0.01f64..0.99;
    prop_oneof![
        (1u32..200).prop_map(|d_max| ModelParams::Null { d_max }),
        (q.clone(), 1u32..200).prop_map(|(q, d_max)| ModelParams::TruncatedGeometric { q, d_max }),
        (q.clone(), q.clone(), 1u32..30, 0u32..100).prop_map(|(q1, q2, d_star, extra)| {
            ModelParams::TruncatedTwoRegimeGeometric {
                q1,
                q2,
                d_star,
                d_max: d_star + extra,
            }
        }),
        (0.0f64..6.0, 1u32..200).prop_map(|(gamma, d_max)| ModelParams::TruncatedZeta { gamma, d_max }),
        (0.0f64..6.0, q, 1u32..30, 0u32..100).prop_map(|(gamma, q, d_star, extra)| {
            ModelParams::TruncatedZetaGeometric {
                gamma,
                q,
                d_star,
                d_max: d_star + extra,
            }
        }),
    ]
}

/// Random tree as heads: word `i` attaches to an earlier word, then the
/// positions are shuffled by `perm`.
fn tree() -> impl Strategy<Value = DepTree> {
    (2usize..12)
        .prop_flat_map(|n| {
            let parents: Vec<_> = (1..n).map(|i| 0..i).collect();
            (parents, Just((0..n).collect::<Vec<_>>()).prop_shuffle())
        })
        .prop_map(|(parents, perm)| {
            let n = perm.len();
            let mut heads = vec![0usize; n];
            for (i, &p) in parents.iter().enumerate() {
                heads[perm[i + 1]] = perm[p] + 1;
            }
            DepTree::new(heads).expect("valid tree")
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn truncated_pmfs_sum_to_one(p in truncated_params()) {
        let pmf = Pmf::new(&p);
        let d_max = p.d_max().unwrap();
        let total: f64 = (1..=d_max).map(|d| pmf.pmf(d)).sum();
        prop_assert!((total - 1.0).abs() < 1e-9);
        prop_assert_eq!(pmf.pmf(d_max + 1), 0.0);
    }

    #[test]
    fn samples_stay_in_support(p in truncated_params(), seed in any::<u64>()) {
        let g = generate(&SamplerConfig::new(p.clone(), 500, seed)).unwrap();
        prop_assert_eq!(g.sample.total(), 500);
        prop_assert!(g.sample.max() <= p.d_max().unwrap());
    }

    #[test]
    fn sample_order_does_not_matter(mut d in prop::collection::vec(1u32..50, 1..200)) {
        let a = DistanceSample::from_distances(d.clone()).unwrap();
        d.reverse();
        let b = DistanceSample::from_distances(d).unwrap();
        prop_assert_eq!(a.iter().collect::<Vec<_>>(), b.iter().collect::<Vec<_>>());
    }

    #[test]
    fn omega_is_at_most_one(t in tree()) {
        let r = omega(&t);
        prop_assert!(r.d_min <= r.d);
        if let Some(w) = r.omega {
            prop_assert!(w <= 1.0 + 1e-12);
            prop_assert_eq!(w == 1.0, r.d == r.d_min);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn selection_ignores_model_order(seed in any::<u64>(), shuffle in Just(ModelId::FIXED_LENGTH_SET.to_vec()).prop_shuffle()) {
        let p = ModelParams::TruncatedGeometric { q: 0.3, d_max: 25 };
        let g = generate(&SamplerConfig::new(p, 2000, seed)).unwrap();
        let obs = Observations::pooled(&g.sample);
        let opts = FitOptions::default();
        let a = select(&obs, &ModelId::FIXED_LENGTH_SET, Criterion::Aic, &opts).unwrap();
        let b = select(&obs, &shuffle, Criterion::Aic, &opts).unwrap();
        prop_assert_eq!(a.best, b.best);
        prop_assert_eq!(
            a.ranking.iter().map(|e| e.model).collect::<Vec<_>>(),
            b.ranking.iter().map(|e| e.model).collect::<Vec<_>>()
        );
    }
}
