use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use loopmagnus_core::magnus::{magnus, MagnusConfig};
use loopmagnus_core::term::{self, LoopTerm};
use loopmagnus_core::Mode;

fn magnus_over_small_words(c: &mut Criterion) {
    let words = term::enumerate_reduced(2, 4, Mode::NonCommutative, 1 << 20).unwrap();
    let cfg = MagnusConfig::classical(2, 6, Mode::NonCommutative);
    c.bench_function("magnus N=6 over reduced words <=4 leaves", |b| {
        b.iter(|| {
            for w in &words {
                std::hint::black_box(magnus(w, &cfg).unwrap());
            }
        })
    });
}

fn reduce_deep_word(c: &mut Criterion) {
    // A word that needs many rewriting passes.
    let mut w = LoopTerm::Gen(1);
    for i in 0..24u8 {
        let g = LoopTerm::Gen(1 + i % 2);
        w = if i % 3 == 0 {
            LoopTerm::ldiv(g, LoopTerm::mul(LoopTerm::Gen(1 + i % 2), w))
        } else {
            LoopTerm::mul(g, w)
        };
    }
    c.bench_function("reduce deep word", |b| {
        b.iter_batched(|| w.clone(), |w| term::reduce(&w, Mode::NonCommutative), BatchSize::SmallInput)
    });
}

fn series_product(c: &mut Criterion) {
    let cfg = MagnusConfig::classical(2, 8, Mode::NonCommutative);
    let u = magnus(&term::parse("x1\\(x2*x1)", 2).unwrap(), &cfg).unwrap();
    let v = magnus(&term::parse("(x1*x2)/x1", 2).unwrap(), &cfg).unwrap();
    c.bench_function("series product N=8", |b| {
        b.iter(|| std::hint::black_box(u.checked_mul(&v).unwrap()))
    });
}

criterion_group!(benches, magnus_over_small_words, reduce_deep_word, series_product);
criterion_main!(benches);
