mod common;

use common::*;
use hybridseg::{
    compute_histogram, median_filter_color, merge_channels, segment, split_channels, sweep,
    ChannelThreshold, ColorImage, GrayChannel, SegmentationConfig, ValueAssignment, WindowSize,
};
use proptest::prelude::*;

const MODES: [ValueAssignment; 2] = [ValueAssignment::Binary, ValueAssignment::ClassMeans];

/// Thresholds one plane using only the brute-force oracle and direct sums.
fn oracle_threshold(ch: &GrayChannel, mode: ValueAssignment) -> (GrayChannel, ChannelThreshold) {
    let counts = *compute_histogram(ch).counts();
    let Some(t) = brute_force_otsu(&counts) else {
        return (ch.clone(), ChannelThreshold::Degenerate);
    };
    let (low, high) = match mode {
        ValueAssignment::Binary => (0, 255),
        ValueAssignment::ClassMeans => {
            let mean = |range: std::ops::Range<usize>| {
                let n: u64 = counts[range.clone()].iter().sum();
                let s: u64 = range.map(|i| i as u64 * counts[i]).sum();
                if n == 0 {
                    0
                } else {
                    (s as f64 / n as f64).round() as u8
                }
            };
            (mean(0..t + 1), mean(t + 1..256))
        }
    };
    let out = ch.map(|v| if (v as usize) <= t { low } else { high });
    (out, ChannelThreshold::Threshold(t as u8))
}

fn oracle_segment(
    img: &ColorImage,
    cfg: &SegmentationConfig,
) -> (ColorImage, [ChannelThreshold; 3]) {
    let (r, g, b) = split_channels(img);
    let (r, tr) = oracle_threshold(&r, cfg.mode);
    let (g, tg) = oracle_threshold(&g, cfg.mode);
    let (b, tb) = oracle_threshold(&b, cfg.mode);
    let (r, g, b) = if cfg.apply_median {
        let k = cfg.window.k();
        (
            counting_median(&r, k),
            counting_median(&g, k),
            counting_median(&b, k),
        )
    } else {
        (r, g, b)
    };
    (merge_channels(&r, &g, &b).unwrap(), [tr, tg, tb])
}

#[test]
fn matches_step_by_step_oracle_chain() {
    let mut rng = rng(31);
    for mode in MODES {
        let img = random_image(&mut rng, 64, 64);
        let cfg = SegmentationConfig::with_window(mode, WindowSize::new(7).unwrap());
        let out = segment(&img, &cfg);
        let (expected, thresholds) = oracle_segment(&img, &cfg);
        assert_eq!(out.thresholds(), thresholds);
        assert_eq!(out.image, expected);
        assert_eq!(out.config, cfg);
    }
}

#[test]
fn scene_matches_oracle_for_every_panel() {
    let mut rng = rng(32);
    let img = synthetic_scene(&mut rng, 48, 40);
    for mode in MODES {
        for out in sweep(&img, mode) {
            let (expected, thresholds) = oracle_segment(&img, &out.config);
            assert_eq!(out.thresholds(), thresholds);
            assert_eq!(out.image, expected, "{:?}", out.config);
        }
    }
}

#[test]
fn two_level_red_plane_binary() {
    let img = ColorImage::from_fn(10, 10, |x, y| {
        [if y < 5 { 50 } else { 200 }, (x * 25) as u8, (x * y) as u8]
    });
    let out = segment(
        &img,
        &SegmentationConfig::otsu_only(ValueAssignment::Binary),
    );
    assert_eq!(out.t_r, ChannelThreshold::Threshold(50));
    let (r, _, _) = split_channels(&out.image);
    assert!(r.values().iter().all(|&v| v == 0 || v == 255));
}

#[test]
fn one_flat_plane_does_not_block_the_others() {
    let mut rng = rng(33);
    let noise = random_image(&mut rng, 20, 20);
    let img = ColorImage::from_fn(20, 20, |x, y| {
        let p = noise.pixel(x, y);
        [p[0], 128, p[2]]
    });
    let out = segment(&img, &SegmentationConfig::default());
    assert_eq!(out.t_g, ChannelThreshold::Degenerate);
    assert!(out.t_r.value().is_some() && out.t_b.value().is_some());
    assert!(out.image.pixels().all(|p| p[1] == 128));
}

#[test]
fn constant_image_sweep_is_identity() {
    let img = ColorImage::from_fn(9, 9, |_, _| [1, 2, 3]);
    for mode in MODES {
        let outs = sweep(&img, mode);
        assert_eq!(outs.len(), 8);
        for out in outs {
            assert_eq!(out.image, img);
            assert_eq!(out.thresholds(), [ChannelThreshold::Degenerate; 3]);
        }
    }
}

#[test]
fn sweep_panels_equal_standalone_runs() {
    let mut rng = rng(34);
    let img = synthetic_scene(&mut rng, 40, 30);
    for mode in MODES {
        let outs = sweep(&img, mode);
        assert_eq!(outs[0], segment(&img, &SegmentationConfig::otsu_only(mode)));
        for (out, w) in outs[1..].iter().zip(WindowSize::sweep()) {
            assert_eq!(
                out,
                &segment(&img, &SegmentationConfig::with_window(mode, w))
            );
        }
    }
}

#[test]
fn median_before_or_after_merge_coincide() {
    let mut rng = rng(35);
    let img = random_image(&mut rng, 24, 24);
    let thresholded = segment(
        &img,
        &SegmentationConfig::otsu_only(ValueAssignment::ClassMeans),
    )
    .image;
    let w = WindowSize::new(5).unwrap();
    let (r, g, b) = split_channels(&thresholded);
    let per_plane = merge_channels(
        &counting_median(&r, 5),
        &counting_median(&g, 5),
        &counting_median(&b, 5),
    )
    .unwrap();
    assert_eq!(median_filter_color(&thresholded, w), per_plane);
}

#[test]
fn identical_across_worker_counts() {
    let mut rng = rng(36);
    let single = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    let many = rayon::ThreadPoolBuilder::new()
        .num_threads(6)
        .build()
        .unwrap();
    for _ in 0..4 {
        let img = synthetic_scene(&mut rng, 90, 70);
        let cfg = SegmentationConfig::default();
        let a = single.install(|| segment(&img, &cfg));
        let b = many.install(|| segment(&img, &cfg));
        assert_eq!(a, b);
        assert_eq!(
            single.install(|| sweep(&img, cfg.mode)),
            many.install(|| sweep(&img, cfg.mode))
        );
    }
}

fn image_strategy() -> impl Strategy<Value = ColorImage> {
    (1usize..20, 1usize..20).prop_flat_map(|(w, h)| {
        proptest::collection::vec(any::<u8>(), w * h * 3)
            .prop_map(move |v| ColorImage::from_raw(w, h, v).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn at_most_eight_colors_and_same_size(
        img in image_strategy(),
        k in prop::sample::select(WindowSize::SWEEP.to_vec()),
        binary in any::<bool>(),
        median in any::<bool>(),
    ) {
        let mode = if binary { ValueAssignment::Binary } else { ValueAssignment::ClassMeans };
        let cfg = SegmentationConfig { window: WindowSize::new(k).unwrap(), mode, apply_median: median };
        let out = segment(&img, &cfg);
        prop_assert!(out.image.distinct_colors() <= 8);
        prop_assert_eq!(out.image.dimensions(), img.dimensions());
        for t in out.thresholds().iter().filter_map(|t| t.value()) {
            prop_assert!(t <= 254);
        }
    }

    #[test]
    fn segmentation_is_deterministic(img in image_strategy()) {
        let cfg = SegmentationConfig::with_window(ValueAssignment::ClassMeans, WindowSize::new(3).unwrap());
        prop_assert_eq!(segment(&img, &cfg), segment(&img, &cfg));
    }
}
