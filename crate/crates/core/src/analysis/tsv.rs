//! Plot-ready tab-separated outputs. Every file starts with a header row.

use std::io::Write;

use super::{DecoderDump, SpeedupRecord, SweepRow, TransitionMatrix};
use crate::error::Result;
use crate::genome::Genome;

/// `{experiment}-seed{seed}-{stage}.tsv`
pub fn artifact_name(experiment: &str, seed: u64, stage: &str) -> String {
    format!("{experiment}-seed{seed}-{stage}.tsv")
}

pub fn write_transition_tsv(m: &TransitionMatrix, mut w: impl Write) -> Result<()> {
    writeln!(w, "from\tto\tprobability")?;
    for a in 0..m.size() {
        for (b, p) in m.row(a).iter().enumerate() {
            writeln!(w, "{a}\t{b}\t{p}")?;
        }
    }
    Ok(())
}

pub fn write_marginal_tsv(m: &TransitionMatrix, mut w: impl Write) -> Result<()> {
    writeln!(w, "genome\tbits\tprobability")?;
    for (g, p) in m.marginal().iter().enumerate() {
        let bits = Genome::from_index(g, m.bits()).to_bitstring().expect("binary");
        writeln!(w, "{g}\t{bits}\t{p}")?;
    }
    Ok(())
}

/// Long-form histogram: one row per (rate, distance).
pub fn write_sweep_tsv(rows: &[SweepRow], mut w: impl Write) -> Result<()> {
    writeln!(w, "rate\tdistance\tcount")?;
    for r in rows {
        for (d, c) in r.histogram.iter().enumerate() {
            writeln!(w, "{}\t{d}\t{c}", r.rate)?;
        }
    }
    Ok(())
}

pub fn write_sweep_summary_tsv(rows: &[SweepRow], mut w: impl Write) -> Result<()> {
    writeln!(w, "rate\tmean_distance\tseed_means")?;
    for r in rows {
        let per_seed: Vec<String> = r.seed_means.iter().map(|v| v.to_string()).collect();
        writeln!(w, "{}\t{}\t{}", r.rate, r.mean_distance, per_seed.join(","))?;
    }
    Ok(())
}

pub fn write_dumps_tsv(dumps: &[DecoderDump], mut w: impl Write) -> Result<()> {
    writeln!(w, "trial\tstage\tinput\tpixel\tprobability")?;
    for d in dumps {
        for (i, out) in d.outputs.iter().enumerate() {
            for (px, p) in out.iter().enumerate() {
                writeln!(w, "{}\t{}\t{i}\t{px}\t{p}", d.trial, d.stage.label())?;
            }
        }
    }
    Ok(())
}

pub fn write_speedup_tsv(records: &[SpeedupRecord], mut w: impl Write) -> Result<()> {
    writeln!(
        w,
        "first\tsecond\tthird\ttrials\tmean_iterations_fresh\tmean_iterations_pretrained\tspeedup\tfresh_solved\tpretrained_solved\tp_value"
    )?;
    for r in records {
        let p = r.p_value.map(|p| p.to_string()).unwrap_or_else(|| "NA".into());
        writeln!(
            w,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{p}",
            r.first,
            r.second,
            r.third_pattern,
            r.trials,
            r.mean_iterations_fresh,
            r.mean_iterations_pretrained,
            r.speedup,
            r.fresh_solved,
            r.pretrained_solved
        )?;
    }
    Ok(())
}
