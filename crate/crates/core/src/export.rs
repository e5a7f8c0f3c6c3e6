// SPDX-License-Identifier: Apache-2.0

//! CSV writers for scores, rankings, scatter data, and SI traces.
//!
//! Reals are written with six significant digits and `.` as decimal mark;
//! missing values are empty fields.

use std::io::Write;

use crate::distance::NetworkStats;
use crate::epidemic::SiTrace;
use crate::error::Result;
use crate::ranking::{rank_frequency, RankTable, Scatter};
use crate::score::ScoreVector;

/// `%g`-style formatting with `digits` significant digits and trailing
/// zeros removed.
pub fn format_sig(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci
        .split_once('e')
        .expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= digits as i32 {
        let mantissa = trim_zeros(mantissa);
        return format!("{mantissa}e{exp}");
    }
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn real(x: f64) -> String {
    format_sig(x, 6)
}

fn opt_real(x: Option<f64>) -> String {
    x.map(real).unwrap_or_default()
}

fn writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(w)
}

pub fn write_stats<W: Write>(w: W, name: &str, s: &NetworkStats) -> Result<()> {
    let mut out = writer(w);
    out.write_record([
        "network",
        "nodes",
        "edges",
        "mean_degree",
        "max_degree",
        "mean_distance",
        "max_distance",
        "disconnected",
    ])?;
    out.write_record([
        name.to_string(),
        s.nodes.to_string(),
        s.edges.to_string(),
        real(s.mean_degree),
        s.max_degree.to_string(),
        opt_real(s.mean_distance),
        s.max_distance.to_string(),
        s.disconnected.to_string(),
    ])?;
    out.flush()?;
    Ok(())
}

/// Columns `label, measure, q, score, flagged`, in node index order.
pub fn write_scores<W: Write>(w: W, scores: &ScoreVector) -> Result<()> {
    let mut out = writer(w);
    out.write_record(["label", "measure", "q", "score", "flagged"])?;
    let measure = scores.measure();
    let q = measure.q().map(real).unwrap_or_default();
    for (label, score) in scores.labels().iter().zip(scores.scores()) {
        out.write_record([
            label.to_string(),
            measure.short_name().to_string(),
            q.clone(),
            opt_real(*score),
            score.is_none().to_string(),
        ])?;
    }
    out.flush()?;
    Ok(())
}

/// Columns `rank, label, score` for the first `k` nodes of the table.
pub fn write_top_k<W: Write>(w: W, table: &RankTable, k: usize) -> Result<()> {
    let mut out = writer(w);
    out.write_record(["rank", "label", "score"])?;
    let scores = table.scores();
    for &i in table.order().iter().take(k) {
        out.write_record([
            table.rank_of(i).to_string(),
            scores.labels()[i].to_string(),
            opt_real(scores.get(i)),
        ])?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_rank_frequency<W: Write>(w: W, table: &RankTable) -> Result<()> {
    let mut out = writer(w);
    out.write_record(["rank", "count"])?;
    for (rank, count) in rank_frequency(table) {
        out.write_record([rank.to_string(), count.to_string()])?;
    }
    out.flush()?;
    Ok(())
}

/// Columns `label, x, y, ability`, preceded by `#` comment lines naming the
/// measures, the spreading parameters in `context`, and the correlations.
pub fn write_scatter<W: Write>(mut w: W, scatter: &Scatter, context: &str) -> Result<()> {
    writeln!(
        w,
        "# x={} y={} {}",
        scatter.x_measure, scatter.y_measure, context
    )?;
    writeln!(
        w,
        "# pearson={} kendall_tau_b={} used={}",
        opt_real(scatter.pearson),
        opt_real(scatter.kendall_tau_b),
        scatter.used
    )?;
    let mut out = writer(w);
    out.write_record(["label", "x", "y", "ability"])?;
    for r in &scatter.records {
        out.write_record([
            r.label.to_string(),
            opt_real(r.x),
            opt_real(r.y),
            real(r.ability),
        ])?;
    }
    out.flush()?;
    Ok(())
}

/// Columns `t, mean_F, min_F, max_F, trials, lambda, seed_set_name`, one
/// block of rows per named trace.
pub fn write_traces<W: Write>(w: W, traces: &[(String, SiTrace)]) -> Result<()> {
    let mut out = writer(w);
    out.write_record([
        "t",
        "mean_F",
        "min_F",
        "max_F",
        "trials",
        "lambda",
        "seed_set_name",
    ])?;
    for (name, tr) in traces {
        for t in 0..tr.mean.len() {
            out.write_record([
                t.to_string(),
                real(tr.mean[t]),
                tr.min[t].to_string(),
                tr.max[t].to_string(),
                tr.trials.to_string(),
                real(tr.lambda),
                name.clone(),
            ])?;
        }
    }
    out.flush()?;
    Ok(())
}

/// Per-trial counts, columns `seed_set_name, trial, t, F`.
pub fn write_raw_traces<W: Write>(w: W, traces: &[(String, SiTrace)]) -> Result<()> {
    let mut out = writer(w);
    out.write_record(["seed_set_name", "trial", "t", "F"])?;
    for (name, tr) in traces {
        for (r, run) in tr.raw.iter().flatten().enumerate() {
            for (t, f) in run.iter().enumerate() {
                out.write_record([name.clone(), r.to_string(), t.to_string(), f.to_string()])?;
            }
        }
    }
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ranking::rank;
    use crate::score::Measure;

    #[test]
    fn significant_digits() {
        assert_eq!(real(2.408199643493761), "2.4082");
        assert_eq!(real(27.696969696969695), "27.697");
        assert_eq!(real(4.588235294117647), "4.58824");
        assert_eq!(real(1.0), "1");
        assert_eq!(real(-0.125), "-0.125");
        assert_eq!(real(0.0), "0");
        assert_eq!(real(123456789.0), "1.23457e8");
        assert_eq!(real(1.5e-7), "1.5e-7");
        assert_eq!(real(0.000123456), "0.000123456");
        assert_eq!(real(999999.5), "1e6");
    }

    #[test]
    fn score_and_top_k_csv() {
        let s = ScoreVector::for_measure(
            Measure::Mld { q: 2.0 },
            vec![1, 2, 3],
            vec![Some(0.5), None, Some(-1.25)],
        )
        .unwrap();
        let mut buf = Vec::new();
        write_scores(&mut buf, &s).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "label,measure,q,score,flagged\n1,mld,2,0.5,false\n2,mld,2,,true\n3,mld,2,-1.25,false\n"
        );
        let mut buf = Vec::new();
        write_top_k(&mut buf, &rank(&s), 2).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "rank,label,score\n1,3,-1.25\n2,1,0.5\n"
        );
    }
}
