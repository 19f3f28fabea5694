//! Line-record trace files: one JSON object per line, `#` comment lines,
//! UTF-8.
//!
//! Schema per line:
//! `{"t": <seconds>, "left": {"joints": {"<name>": [x,y,z], ...}, "poses": [...]}?, "right": {...}?}`
//!
//! Unknown keys, unknown joint names, and unknown pose labels are rejected.
//! Writing is canonical: fixed key order, joints in enum order, floats in
//! plain decimal at 9 significant digits, so a written trace re-reads and
//! re-writes byte-identically.

use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use serde::Deserialize;
use thiserror::Error;

use crate::geom::Vec3;
use crate::hand::{FrameError, HandFrame, HandJoints, JointName, PoseLabel, Trace};

#[derive(Debug, Error)]
pub enum TraceError {
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: timestamps must be strictly increasing")]
    NonMonotoneTimestamp { line: usize },
    #[error("trace contains no frames")]
    EmptyTrace,
}

/// Formats a float in plain decimal with 9 significant digits, trailing
/// zeros trimmed. `-0` collapses to `0`.
pub fn fmt_f64(x: f64) -> String {
    debug_assert!(x.is_finite());
    if x == 0.0 {
        return "0".to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    let prec = (8 - exp).max(0) as usize;
    let mut s = format!("{:.*}", prec, x);
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    s
}

// Wire representation; parsing is strict, unknown keys are errors.

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FrameRecord {
    t: f64,
    #[serde(default)]
    left: Option<HandRecord>,
    #[serde(default)]
    right: Option<HandRecord>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct HandRecord {
    joints: BTreeMap<String, [f64; 3]>,
    #[serde(default)]
    poses: Vec<String>,
}

fn hand_from_record(rec: HandRecord) -> Result<(HandJoints, Vec<PoseLabel>), String> {
    let mut joints = BTreeMap::new();
    for (name, [x, y, z]) in rec.joints {
        let joint = JointName::from_str(&name).ok_or_else(|| format!("unknown joint \"{name}\""))?;
        joints.insert(joint, Vec3::new(x, y, z));
    }
    let hand = HandJoints::new(joints).map_err(|e| e.to_string())?;
    let mut poses = Vec::new();
    for label in rec.poses {
        poses.push(PoseLabel::from_str(&label).ok_or_else(|| format!("unknown pose \"{label}\""))?);
    }
    Ok((hand, poses))
}

/// Reads a trace from line records. Fails on the first malformed line,
/// on non-monotone timestamps, and on input with no records at all.
pub fn read_trace(reader: impl BufRead) -> Result<Trace, TraceError> {
    let mut trace = Trace::new(Vec::new()).expect("empty trace is monotone");
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let record: FrameRecord = serde_json::from_str(trimmed)
            .map_err(|e| TraceError::Parse { line: line_no, msg: e.to_string() })?;
        let frame = build_frame(record).map_err(|msg| TraceError::Parse { line: line_no, msg })?;
        trace.push(frame).map_err(|e| match e {
            FrameError::NonMonotone { .. } => TraceError::NonMonotoneTimestamp { line: line_no },
            other => TraceError::Parse { line: line_no, msg: other.to_string() },
        })?;
    }
    if trace.is_empty() {
        return Err(TraceError::EmptyTrace);
    }
    Ok(trace)
}

fn build_frame(record: FrameRecord) -> Result<HandFrame, String> {
    let mut left = None;
    let mut left_poses = Vec::new();
    if let Some(rec) = record.left {
        let (hand, poses) = hand_from_record(rec)?;
        left = Some(hand);
        left_poses = poses;
    }
    let mut right = None;
    let mut right_poses = Vec::new();
    if let Some(rec) = record.right {
        let (hand, poses) = hand_from_record(rec)?;
        right = Some(hand);
        right_poses = poses;
    }
    let mut frame = HandFrame::new(record.t, left, right).map_err(|e| e.to_string())?;
    frame.left_poses = left_poses.into_iter().collect();
    frame.right_poses = right_poses.into_iter().collect();
    Ok(frame)
}

/// Reads a trace from a string.
pub fn read_trace_str(s: &str) -> Result<Trace, TraceError> {
    read_trace(s.as_bytes())
}

/// Writes a trace in canonical line-record form.
pub fn write_trace(trace: &Trace, mut sink: impl Write) -> std::io::Result<()> {
    for frame in trace.frames() {
        sink.write_all(frame_line(frame).as_bytes())?;
        sink.write_all(b"\n")?;
    }
    Ok(())
}

/// Canonical serialization of a trace as a string.
pub fn write_trace_string(trace: &Trace) -> String {
    let mut out = String::new();
    for frame in trace.frames() {
        out.push_str(&frame_line(frame));
        out.push('\n');
    }
    out
}

fn frame_line(frame: &HandFrame) -> String {
    let mut s = String::with_capacity(256);
    s.push_str("{\"t\":");
    s.push_str(&fmt_f64(frame.t));
    if let Some(hand) = &frame.left {
        s.push_str(",\"left\":");
        push_hand(&mut s, hand, frame.left_poses.iter());
    }
    if let Some(hand) = &frame.right {
        s.push_str(",\"right\":");
        push_hand(&mut s, hand, frame.right_poses.iter());
    }
    s.push('}');
    s
}

fn push_hand<'a>(s: &mut String, hand: &HandJoints, poses: impl Iterator<Item = &'a PoseLabel>) {
    s.push_str("{\"joints\":{");
    let mut first = true;
    for (name, pos) in hand.iter() {
        if !first {
            s.push(',');
        }
        first = false;
        s.push('"');
        s.push_str(name.as_str());
        s.push_str("\":[");
        s.push_str(&fmt_f64(pos.x));
        s.push(',');
        s.push_str(&fmt_f64(pos.y));
        s.push(',');
        s.push_str(&fmt_f64(pos.z));
        s.push(']');
    }
    s.push('}');
    let labels: Vec<&PoseLabel> = poses.collect();
    if !labels.is_empty() {
        s.push_str(",\"poses\":[");
        for (i, label) in labels.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            s.push('"');
            s.push_str(label.as_str());
            s.push('"');
        }
        s.push(']');
    }
    s.push('}');
}
