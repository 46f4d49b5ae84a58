//! Prefixed lattice words and their cyclic shifts: a word with first run l
//! has exactly l Dyck shifts.

use fusscat::counting::{enumerate_prefixed_words, prefixed_word_count};
use fusscat::Params;

fn main() -> anyhow::Result<()> {
    let params = Params::new(3, 2)?;
    let length = 6;
    let mut total = 0;
    for lead in (params.step()..=length).step_by(params.step()) {
        let words: Vec<_> = enumerate_prefixed_words(&params, length, lead)?.collect();
        let dyck: Vec<_> = words.iter().filter(|w| w.is_dyck()).collect();
        println!(
            "l={lead}: {} words (multinomial sum {}), {} Dyck",
            words.len(),
            prefixed_word_count(&params, length, lead)?,
            dyck.len()
        );
        for w in &words {
            let marks: String = (0..length)
                .map(|j| {
                    if w.cyclic_shift(j).map(|s| s.is_dyck()).unwrap_or(false) {
                        '+'
                    } else {
                        '.'
                    }
                })
                .collect();
            println!(
                "  {:<14} shifts {marks} ({})",
                w.to_string(),
                w.dyck_shift_count()
            );
        }
        total += dyck.len();
    }
    println!("{total} minimal tuples of length {length}");
    Ok(())
}
