use pstream::analysis::{
    build_ladder, compute_prefix_pperiods, CompressedPred, LadderMode, PatternProfile,
};
use pstream::field::{prime_for_bits, FieldContext, Fingerprint, ZeroEntry};
use pstream::filter::AlphabetFilter;
use pstream::instance::{long_gap_text, random_string, relabel, repeat_block, rng};
use pstream::oracle::{naive_all_matches, naive_pmatch, naive_pperiod, verify_match_structure};
use pstream::pred::{pmatch_compare, pred_string, window_relative, LastOccurrence, Pred};
use pstream::queue::{MatchQueue, MatchSegment};
use pstream::{DetMatcher, Error, MatcherConfig, StreamMatcher, TraceEvent};

fn syms(s: &str) -> Vec<u32> {
    s.bytes().map(|b| u32::from(b - b'a')).collect()
}

fn small() -> FieldContext<u64> {
    FieldContext::with_params(101, 7).unwrap()
}

fn ends(det: &mut DetMatcher, text: &[u32]) -> Vec<usize> {
    text.iter()
        .enumerate()
        .filter_map(|(i, &c)| det.step(c).unwrap().then_some(i))
        .collect()
}

fn traced() -> MatcherConfig {
    MatcherConfig {
        trace: true,
        ..MatcherConfig::default()
    }
}

/// A random pattern that takes the randomized path.
fn randomized_pattern(m: usize, sigma: usize, seed: u64) -> Vec<u32> {
    let mut r = rng(seed);
    loop {
        let p = random_string(&mut r, m, sigma);
        if PatternProfile::new(&p, sigma).unwrap().ladder.mode == LadderMode::Randomized {
            return p;
        }
    }
}

// field

#[test]
fn context_is_reproducible() {
    let a = FieldContext::<u64>::new(61, 1).unwrap();
    let b = FieldContext::<u64>::new(61, 1).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.modulus(), (1u64 << 61) - 1);
    assert_eq!(prime_for_bits(61), (1u64 << 61) - 1);
}

#[test]
fn narrow_prime_is_rejected_by_matcher() {
    let pattern: Vec<u32> = (0..300).collect();
    let cfg = |bits| MatcherConfig {
        prime_bits: bits,
        ..MatcherConfig::default()
    };
    assert!(matches!(
        StreamMatcher::<u64>::new(&pattern, 300, &cfg(7)),
        Err(Error::Config(_))
    ));
    let wide: Vec<u32> = vec![0; 4];
    assert!(matches!(
        StreamMatcher::<u64>::new(&wide, 70_000, &cfg(16)),
        Err(Error::Config(_))
    ));
}

#[test]
fn sequence_fingerprints() {
    let ctx = small();
    assert_eq!(ctx.fingerprint(&[1, 2, 3]).value, 61);
    assert_eq!(ctx.fingerprint(&[]), Fingerprint { value: 0, len: 0 });
    assert_eq!(
        ctx.fingerprint(&[0, 0, 0]),
        Fingerprint { value: 0, len: 3 }
    );
}

#[test]
fn append_examples() {
    let mut ctx = small();
    let mut fp = Fingerprint::empty();
    for (i, v) in [1u64, 2].into_iter().enumerate() {
        fp = ctx.append(fp, v, i as u64).unwrap();
        ctx.advance();
    }
    let three = ctx.append(fp, 3, 2).unwrap();
    assert_eq!(three, Fingerprint { value: 61, len: 3 });
    let zero = ctx.append(fp, 0, 2).unwrap();
    assert_eq!(zero.value, fp.value);
    assert_eq!(zero.len, fp.len + 1);
}

#[test]
fn split_examples() {
    let ctx = small();
    assert_eq!(ctx.base_inv(), 29);
    let whole = ctx.fingerprint(&[1, 2, 3]);
    let prefix = ctx.fingerprint(&[1]);
    let rest = ctx.split(whole, prefix, ctx.pow_neg(1)).unwrap();
    assert_eq!(rest, Fingerprint { value: 23, len: 2 });
    assert!(matches!(
        ctx.split(whole, whole, ctx.pow_neg(3)),
        Err(Error::Usage(_))
    ));
}

#[test]
fn zero_examples() {
    let ctx = small();
    let fp = ctx.fingerprint(&[1, 2, 3]);
    let entry = |position: u64, value: u64| ZeroEntry {
        position,
        value,
        r_pow: ctx.pow(position),
    };
    assert_eq!(ctx.zero(fp, &[entry(1, 2)], 0).unwrap().value, 47);
    assert_eq!(ctx.fingerprint(&[1, 0, 3]).value, 47);
    assert_eq!(ctx.zero(fp, &[], 0).unwrap(), fp);
    let all = [entry(0, 1), entry(1, 2), entry(2, 3)];
    assert_eq!(
        ctx.zero(fp, &all, 0).unwrap(),
        Fingerprint { value: 0, len: 3 }
    );
}

// predecessor

#[test]
fn pred_string_examples() {
    assert_eq!(pred_string(b"aababcca"), vec![0, 1, 0, 2, 2, 0, 1, 4]);
    assert_eq!(pred_string(b"qwerty"), vec![0; 6]);
    assert_eq!(pred_string(b"aaaa"), vec![0, 1, 1, 1]);
}

#[test]
fn stream_predecessors() {
    let mut last = LastOccurrence::new(2);
    let got: Vec<u64> = syms("aaba")
        .iter()
        .enumerate()
        .map(|(i, &c)| last.step(c, i as u64).unwrap().value())
        .collect();
    assert_eq!(got, vec![0, 1, 0, 2]);

    let mut last = LastOccurrence::new(5);
    for c in 0..5 {
        assert_eq!(last.step(c, c as u64).unwrap(), Pred::NEVER);
    }
    let mut last = LastOccurrence::new(1);
    let unary: Vec<u64> = (0..5).map(|i| last.step(0, i).unwrap().value()).collect();
    assert_eq!(unary, vec![0, 1, 1, 1, 1]);
}

#[test]
fn window_relative_examples() {
    assert_eq!(window_relative(Pred::distance(5), 3), 0);
    assert_eq!(window_relative(Pred::distance(2), 3), 2);
    assert_eq!(window_relative(Pred::NEVER, 3), 0);
}

#[test]
fn pmatch_compare_examples() {
    assert!(pmatch_compare(0, Pred::NEVER, 5));
    assert!(!pmatch_compare(0, Pred::distance(3), 5));
    assert!(pmatch_compare(4, Pred::distance(4), 7));
}

// pattern analysis

#[test]
fn prefix_pperiod_examples() {
    let pp = |s: &str| {
        compute_prefix_pperiods(&pred_string(s.as_bytes()))
            .as_slice()
            .to_vec()
    };
    assert_eq!(pp("aabb"), vec![1, 1, 2, 2]);
    assert_eq!(pp("aaaaaaa"), vec![1; 7]);
    assert_eq!(*pp("ababab").last().unwrap(), 1);
    // cross-check against shift enumeration
    for s in ["aabb", "ababab", "abcabd", "abbcab"] {
        let b = s.as_bytes();
        let want: Vec<usize> = (1..=b.len()).map(|r| naive_pperiod(&b[..r])).collect();
        assert_eq!(pp(s), want, "{s}");
    }
}

#[test]
fn compressed_pred_examples() {
    let pred = pred_string(b"ababab");
    assert_eq!(pred, vec![0, 0, 2, 2, 2, 2]);
    let cp = CompressedPred::build(&pred, 1).unwrap();
    assert_eq!(cp.column(0), (2, 2));
    assert_eq!(cp.pred_access(1).unwrap(), 0);
    assert_eq!(cp.pred_access(4).unwrap(), 2);
    assert_eq!(cp.pred_access(0).unwrap(), 0);

    let unary = CompressedPred::build(&pred_string(b"aaaaa"), 1).unwrap();
    assert_eq!(unary.column(0), (1, 1));
    assert_eq!(unary.pred_access(0).unwrap(), 0);
}

#[test]
fn ladder_fallbacks() {
    let unary = PatternProfile::new(&vec![0; 1000], 4).unwrap();
    assert_eq!(unary.ladder.mode, LadderMode::Deterministic);
    assert_eq!(unary.period(), 1);

    let short = PatternProfile::new(&random_string(&mut rng(2), 100, 8), 8).unwrap();
    assert_eq!(short.ladder.delta, 56);
    assert_eq!(short.ladder.mode, LadderMode::Deterministic);
}

#[test]
fn large_random_pattern_ladder() {
    let m = 1 << 17;
    let p = random_string(&mut rng(17), m, 2);
    let prof = PatternProfile::new(&p, 2).unwrap();
    let lad = &prof.ladder;
    assert_eq!(lad.delta, 34);
    assert_eq!(lad.mode, LadderMode::Randomized);
    assert!(naive_pperiod(&p) > 3 * lad.delta);
    let m0 = lad.m0();
    assert!(naive_pperiod(&p[..m0]) > 3 * lad.delta);
    assert!(naive_pperiod(&p[..m0 - 1]) <= 3 * lad.delta);
    let l = &lad.lengths;
    for w in l[..l.len() - 1].windows(2) {
        assert_eq!(w[1], 2 * w[0]);
    }
    assert_eq!(lad.top(), m - 4 * lad.delta);
    assert_eq!(build_ladder(&prof.periods, 2), *lad);
}

// deterministic matcher

#[test]
fn det_examples() {
    let mut d = DetMatcher::new(&syms("abc"), 3).unwrap();
    assert!(ends(&mut d, &syms("ab")).is_empty());

    let mut d = DetMatcher::new(&[0], 5).unwrap();
    assert_eq!(ends(&mut d, &[3, 1, 4, 1]), vec![0, 1, 2, 3]);

    let runs: Vec<_> = PatternProfile::new(&syms("aabb"), 2)
        .unwrap()
        .runs
        .runs()
        .iter()
        .map(|r| (r.period, r.start, r.end))
        .collect();
    assert_eq!(runs, vec![(1, 1, 2), (2, 3, 4)]);

    let mut d = DetMatcher::new(&syms("ab"), 2).unwrap();
    assert_eq!(ends(&mut d, &syms("aabab")), vec![2, 3, 4]);
    let mut d = DetMatcher::new(&syms("aa"), 2).unwrap();
    assert_eq!(ends(&mut d, &syms("bbbb")), vec![1, 2, 3]);

    let mut d = DetMatcher::new(&syms("abbca"), 4).unwrap();
    assert!(ends(&mut d, &syms("cbddbbc")).is_empty());
    let mut d = DetMatcher::new(&syms("abbca"), 4).unwrap();
    assert_eq!(ends(&mut d, &syms("cbddcbc")), vec![5]);
}

// match queues

#[test]
fn queue_examples() {
    let ctx = FieldContext::<u64>::new(61, 5).unwrap();
    // fingerprints of a window sliding along a period-3 block
    let step = ctx.pow(3);
    let mut fps = vec![ctx.reduce(1234)];
    let mut d = ctx.reduce(99);
    for _ in 0..3 {
        fps.push(ctx.add(*fps.last().unwrap(), d));
        d = ctx.mul(d, step);
    }
    let mut q = MatchQueue::new(3, 16, &ctx);
    for (k, &fp) in fps.iter().enumerate() {
        q.push(100 + 3 * k as u64, fp, &ctx).unwrap();
    }
    assert_eq!(q.segments(), 1);
    assert!(matches!(
        q.iter_segments().next(),
        Some(MatchSegment::Progression {
            start: 100,
            diff: 3,
            count: 4,
            ..
        })
    ));
    for (k, &fp) in fps.iter().enumerate() {
        assert_eq!(q.pop(&ctx), Some((100 + 3 * k as u64, fp)));
    }
    assert_eq!(q.pop(&ctx), None);

    let mut q = MatchQueue::new(3, 16, &ctx);
    q.push(5, 8, &ctx).unwrap();
    q.push(11, 9, &ctx).unwrap();
    assert!(q
        .iter_segments()
        .all(|s| matches!(s, MatchSegment::Explicit { .. })));
    assert_eq!(q.segments(), 2);

    let mut q = MatchQueue::new(3, 16, &ctx);
    q.push(7, 77, &ctx).unwrap();
    assert_eq!(q.pop(&ctx), Some((7, 77)));
}

// stream matcher

#[test]
fn stream_routing() {
    let cfg = MatcherConfig::default();
    let unary = StreamMatcher::<u64>::new(&vec![0; 5000], 4, &cfg).unwrap();
    assert_eq!(unary.mode(), LadderMode::Deterministic);
    let short = StreamMatcher::<u64>::new(&random_string(&mut rng(3), 300, 4), 4, &cfg).unwrap();
    assert_eq!(short.mode(), LadderMode::Deterministic);
    let p = randomized_pattern(4096, 4, 4);
    let sm = StreamMatcher::<u64>::new(&p, 4, &cfg).unwrap();
    assert_eq!(sm.mode(), LadderMode::Randomized);
    let lengths = sm.ladder_lengths();
    let delta = 4 * 12;
    assert_eq!(*lengths.last().unwrap(), 4096 - 4 * delta);
    assert!(lengths[0] > 3 * delta);
}

#[test]
fn short_stream_reports_nothing() {
    let p = randomized_pattern(4096, 4, 5);
    let mut sm = StreamMatcher::<u64>::new(&p, 4, &MatcherConfig::default()).unwrap();
    assert!(sm.run(&p[..4095]).unwrap().is_empty());
}

#[test]
fn deterministic_fallback_agrees_with_det_matcher() {
    let mut r = rng(6);
    for _ in 0..50 {
        let p = random_string(&mut r, 60, 3);
        let t = random_string(&mut r, 2000, 3);
        let mut sm = StreamMatcher::<u64>::new(&p, 3, &MatcherConfig::default()).unwrap();
        assert_eq!(sm.mode(), LadderMode::Deterministic);
        let mut d = DetMatcher::new(&p, 3).unwrap();
        let a: Vec<usize> = sm
            .run(&t)
            .unwrap()
            .into_iter()
            .map(|v| v as usize)
            .collect();
        let b: Vec<usize> = ends(&mut d, &t).into_iter().map(|e| e + 1 - 60).collect();
        assert_eq!(a, b);
    }
}

#[test]
fn randomized_agrees_with_oracle() {
    let mut r = rng(7);
    for seed in 0..6 {
        let p = randomized_pattern(2048, 4, 100 + seed);
        let mut t = random_string(&mut r, 8192, 4);
        for at in [100usize, 3000, 5000] {
            let copy = relabel(&mut r, &p, 4);
            t[at..at + 2048].copy_from_slice(&copy);
        }
        let mut sm = StreamMatcher::<u64>::new(
            &p,
            4,
            &MatcherConfig {
                seed,
                ..Default::default()
            },
        )
        .unwrap();
        let want: Vec<u64> = naive_all_matches(&p, &t)
            .into_iter()
            .map(|v| v as u64)
            .collect();
        assert_eq!(sm.run(&t).unwrap(), want);
        assert_eq!(sm.stats().violations.total(), 0);
    }
}

#[test]
fn prefix_matches_reach_the_first_queue() {
    let p = randomized_pattern(2048, 4, 8);
    let mut sm = StreamMatcher::<u64>::new(&p, 4, &traced()).unwrap();
    let m0 = sm.ladder_lengths()[0];
    assert!(m0 > 1);
    let mut r = rng(9);
    let mut t = random_string(&mut r, 6000, 4);
    for at in [10usize, 700, 2500, 2500 + m0 / 2, 5000] {
        let copy = relabel(&mut r, &p[..m0], 4);
        t[at..at + m0].copy_from_slice(&copy);
    }
    sm.run(&t).unwrap();
    let got: Vec<u64> = sm
        .take_trace()
        .into_iter()
        .filter_map(|e| match e {
            TraceEvent::Prefix { start } => Some(start),
            _ => None,
        })
        .collect();
    let want: Vec<u64> = naive_all_matches(&p[..m0], &t)
        .into_iter()
        .map(|v| v as u64)
        .collect();
    assert!(!want.is_empty());
    assert_eq!(got, want);

    // a unary text cannot match a prefix with two distinct symbols
    let mut sm = StreamMatcher::<u64>::new(&p, 4, &traced()).unwrap();
    sm.run(&vec![2; 6000]).unwrap();
    assert!(sm
        .take_trace()
        .iter()
        .all(|e| !matches!(e, TraceEvent::Prefix { .. })));
}

#[test]
fn short_recurrences_skip_the_zeroing_buffer() {
    let p = randomized_pattern(2048, 4, 10);
    let mut sm = StreamMatcher::<u64>::new(&p, 4, &traced()).unwrap();
    let cyclic: Vec<u32> = (0..8000).map(|i| i % 4).collect();
    sm.run(&cyclic).unwrap();
    assert_eq!(sm.stats().max_pending, 0);
    assert!(sm
        .take_trace()
        .iter()
        .all(|e| !matches!(e, TraceEvent::Zero { .. })));
}

#[test]
fn long_gap_reaches_every_level() {
    let p = randomized_pattern(4096, 4, 11);
    let mut sm = StreamMatcher::<u64>::new(&p, 4, &traced()).unwrap();
    let lengths = sm.ladder_lengths();
    let s = lengths.len() - 1;
    let gap = lengths[s - 1] + 7;
    let mut r = rng(12);
    let mut t = vec![0u32];
    t.extend(random_string(&mut r, gap - 1, 3).into_iter().map(|c| c + 1));
    t.push(0);
    t.extend(random_string(&mut r, 200, 3).into_iter().map(|c| c + 1));
    sm.run(&t).unwrap();
    let levels: Vec<usize> = sm
        .take_trace()
        .into_iter()
        .filter_map(|e| match e {
            TraceEvent::Zero { level, position } if position == gap as u64 => Some(level),
            _ => None,
        })
        .collect();
    assert_eq!(levels, (1..=s).collect::<Vec<_>>());
}

#[test]
fn cycling_long_gaps_stay_within_the_buffer() {
    let p = randomized_pattern(4096, 4, 13);
    let mut sm = StreamMatcher::<u64>::new(&p, 4, &MatcherConfig::default()).unwrap();
    let m0 = sm.ladder_lengths()[0];
    sm.run(&long_gap_text(40_000, 4, m0 + 1)).unwrap();
    assert!(sm.stats().max_pending <= 4);
    assert!(sm.stats().max_pending >= 1);
    assert!(sm.stats().max_zero_queue <= 48);
}

#[test]
fn crossing_symbols_are_zeroed() {
    // d, e, f occur before the window start; in the second half of the window
    // they sit at offsets 1, 5 and 7
    let t = b"def"
        .iter()
        .chain(b"abca")
        .chain(b"bdcabeaf")
        .copied()
        .collect::<Vec<u8>>();
    let (i0, half, len) = (3usize, 4usize, 12usize);
    let global = pred_string(&t);
    let ctx = FieldContext::<u64>::new(61, 21).unwrap();
    let block = &global[i0 + half..i0 + len];
    let whole = ctx.fingerprint(&block.iter().map(|&v| v as u64).collect::<Vec<_>>());
    let zeros: Vec<ZeroEntry<u64>> = (0..block.len())
        .filter(|&k| block[k] > half + k)
        .map(|k| ZeroEntry {
            position: k as u64,
            value: block[k] as u64,
            r_pow: ctx.pow(k as u64),
        })
        .collect();
    let offsets: Vec<u64> = zeros.iter().map(|z| z.position).collect();
    assert_eq!(offsets, vec![1, 5, 7]);
    let zeroed = ctx.zero(whole, &zeros, 0).unwrap();
    let window = pred_string(&t[i0..i0 + len]);
    let want = ctx.fingerprint(&window[half..].iter().map(|&v| v as u64).collect::<Vec<_>>());
    assert_eq!(zeroed, want);
    // with nothing to zero the split alone is the answer
    let plain = ctx.fingerprint(&[1, 2, 3]);
    assert_eq!(ctx.zero(plain, &[], 0).unwrap(), plain);
}

#[test]
fn level_checks_match_recomputed_fingerprints() {
    let mut r = rng(14);
    let mut checked = 0;
    for seed in 0..4 {
        let p = randomized_pattern(2048, 4, 200 + seed);
        let cfg = MatcherConfig {
            seed,
            trace: true,
            ..MatcherConfig::default()
        };
        let mut sm = StreamMatcher::<u64>::new(&p, 4, &cfg).unwrap();
        let lengths = sm.ladder_lengths();
        let mut t = long_gap_text(9000, 4, lengths[0] / 2);
        for at in [500usize, 4000, 4000 + lengths[0] + 1] {
            let copy = relabel(&mut r, &p[..lengths[1]], 4);
            t[at..at + lengths[1]].copy_from_slice(&copy);
        }
        sm.run(&t).unwrap();
        let ctx = FieldContext::<u64>::new(61, seed).unwrap();
        for e in sm.take_trace() {
            if let TraceEvent::Check {
                level,
                start,
                value,
                ..
            } = e
            {
                let st = start as usize;
                let w = pred_string(&t[st..st + lengths[level]]);
                let want = ctx.fingerprint(
                    &w[lengths[level - 1]..]
                        .iter()
                        .map(|&v| v as u64)
                        .collect::<Vec<_>>(),
                );
                assert_eq!(value, want.value, "level {level} start {start}");
                checked += 1;
            }
        }
    }
    assert!(checked >= 6, "only {checked} checks");
}

/// The first symbol that breaks `p` at `k` when written after `p[..k]`.
fn breaking_symbol(p: &[u32], k: usize, sigma: u32) -> u32 {
    (0..sigma)
        .find(|&c| {
            let mut w = p[..k].to_vec();
            w.push(c);
            pred_string(&w)[k] != pred_string(&p[..=k])[k]
        })
        .unwrap()
}

#[test]
fn tail_rejection_and_acceptance() {
    let p = randomized_pattern(2048, 4, 15);
    let mut sm = StreamMatcher::<u64>::new(&p, 4, &traced()).unwrap();
    let top = *sm.ladder_lengths().last().unwrap();
    let mut t = p.clone();
    t[top] = breaking_symbol(&p, top, 4);
    assert!(sm.run(&t).unwrap().is_empty());
    let tails: Vec<_> = sm
        .take_trace()
        .into_iter()
        .filter(|e| matches!(e, TraceEvent::Tail { .. }))
        .collect();
    assert_eq!(
        tails,
        vec![TraceEvent::Tail {
            start: 0,
            matched: false
        }]
    );

    let mut sm = StreamMatcher::<u64>::new(&p, 4, &MatcherConfig::default()).unwrap();
    let mut text = random_string(&mut rng(16), 100, 4);
    text.extend(relabel(&mut rng(17), &p, 4));
    for (i, &c) in text.iter().enumerate() {
        assert_eq!(sm.step(c).unwrap(), i == 100 + 2047, "arrival {i}");
    }
}

#[test]
fn candidates_far_apart_both_finish() {
    let sigma = 4;
    let m = 4096;
    let delta = sigma * 12;
    let block = random_string(&mut rng(18), 4 * delta + 5, sigma);
    let p = repeat_block(&block, m);
    let prof = PatternProfile::new(&p, sigma).unwrap();
    assert_eq!(prof.ladder.mode, LadderMode::Randomized);
    assert!(prof.period() > 3 * delta);
    let t = repeat_block(&block, m + 2 * block.len());
    let mut sm = StreamMatcher::<u64>::new(&p, sigma, &traced()).unwrap();
    let got = sm.run(&t).unwrap();
    let want: Vec<u64> = naive_all_matches(&p, &t)
        .into_iter()
        .map(|v| v as u64)
        .collect();
    assert_eq!(got, want);
    assert!(want.len() >= 3);
    let finished = sm
        .take_trace()
        .iter()
        .filter(|e| matches!(e, TraceEvent::Tail { matched: true, .. }))
        .count();
    assert_eq!(finished, want.len());
}

// filter

#[test]
fn filter_recency_example() {
    // d=3, b=1, g=6, e=4; last arrivals at 25, 33, 58 and 102
    let mut stream = vec![0u64; 103];
    stream[..26].fill(3);
    stream[26..34].fill(1);
    stream[34..59].fill(6);
    stream[59..103].fill(4);
    let mut f = AlphabetFilter::new(4, 100).unwrap();
    for &c in &stream {
        f.step(c);
    }
    assert_eq!(f.live(), vec![(3, 25), (1, 33), (6, 58), (4, 102)]);
    let code = f.code_of(1).unwrap();
    assert_eq!(f.step(1), code);
    assert_eq!(f.live(), vec![(3, 25), (6, 58), (4, 102), (1, 103)]);

    // a new symbol with the list full takes over the oldest code
    let mut f = AlphabetFilter::new(3, 100).unwrap();
    for &c in &stream {
        f.step(c);
    }
    let d_code = f.code_of(3).unwrap();
    assert_eq!(f.step(23), d_code);
    assert_eq!(f.live(), vec![(1, 33), (6, 58), (4, 102), (23, 103)]);
}

#[test]
fn filter_codes_reuse() {
    let mut f = AlphabetFilter::new(2, 10).unwrap();
    let codes: Vec<u32> = [120u64, 450, 120].iter().map(|&c| f.step(c)).collect();
    assert_eq!(codes, vec![0, 1, 0]);
}

// oracle

#[test]
fn oracle_examples() {
    assert!(naive_pmatch(b"abbca", b"bddcb").unwrap());
    assert!(!naive_pmatch(b"abbca", b"bddbb").unwrap());
    assert!(naive_pmatch(b"anything", b"anything").unwrap());
    assert_eq!(
        naive_all_matches(&syms("ab"), &syms("aabab")),
        vec![1, 2, 3]
    );
    assert!(naive_all_matches(&syms("abc"), &syms("ab")).is_empty());
    assert_eq!(naive_all_matches(&syms("abcab"), &syms("abcab")), vec![0]);
    assert_eq!(naive_pperiod(&[7u32; 9]), 1);
    assert_eq!(naive_pperiod(b"aabb"), 2);
    assert_eq!(naive_pperiod(b"abcdefgh"), 1);
}

#[test]
fn structure_examples() {
    let p = vec![0u32; 16];
    let t = vec![1u32; 40];
    let s = verify_match_structure(&p, &t, 0).unwrap().unwrap();
    // every symbol of a unary pattern is seen at 0, so only that match is explicit
    assert_eq!(s.y, vec![0]);
    assert_eq!(s.a, (1..=8).collect::<Vec<_>>());
    // a p-period above m/8 leaves every match explicit
    let p: Vec<u32> = (0..12).map(|i| [0, 0, 1, 1][i % 4]).collect();
    let t: Vec<u32> = (0..40).map(|i| [5, 5, 6, 6][i % 4]).collect();
    let s = verify_match_structure(&p, &t, 0).unwrap().unwrap();
    assert_eq!(s.period, 2);
    assert_eq!(s.y, vec![0, 2, 4, 6]);
    assert!(s.a.is_empty());
}
