use std::fs;

use anyhow::{bail, Context, Result};
use bayerkit::augment::AugStep;
use bayerkit::differential::run_baseline_demo;
use bayerkit::io::save_ppm;
use bayerkit::metrics::report;
use bayerkit::{
    add_noise, apply_plan, demosaic_bilinear, denoise_pipeline, disunify_crop, gen_scene, load_raw,
    mosaic, pack, sample_plan, save_raw, unify_crop, unify_pad, unpack, AugPlan, NoiseParams,
    RawFilePair,
};

use crate::{
    AugmentArgs, BaselineDemoArgs, DemosaicArgs, DenoiseArgs, DisunifyArgs, MetricsArgs,
    PackRoundtripArgs, SimulateArgs, UnifyArgs, UnifyMode,
};

fn load(path: &std::path::Path) -> Result<(bayerkit::RawImage, Option<bayerkit::PadSpec>)> {
    load_raw(&RawFilePair::new(path)).with_context(|| format!("loading {}", path.display()))
}

pub fn unify(args: UnifyArgs) -> Result<()> {
    let (img, _) = load(&args.input)?;
    let out = RawFilePair::new(&args.output);
    match args.mode {
        UnifyMode::Crop => save_raw(&unify_crop(&img, args.target)?, None, &out)?,
        UnifyMode::Pad => {
            let (padded, spec) = unify_pad(&img, args.target)?;
            save_raw(&padded, Some(&spec), &out)?
        }
    }
    Ok(())
}

pub fn disunify(args: DisunifyArgs) -> Result<()> {
    let (img, pad) = load(&args.input)?;
    let Some(spec) = pad else {
        bail!(
            "{} has no \"pad\" entry in its sidecar",
            args.input.display()
        );
    };
    save_raw(
        &disunify_crop(&img, &spec)?,
        None,
        &RawFilePair::new(&args.output),
    )?;
    Ok(())
}

pub fn augment(args: AugmentArgs) -> Result<()> {
    let (img, _) = load(&args.input)?;
    let plan = if let Some(path) = &args.plan {
        let text =
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        AugPlan::from_json(&text)?
    } else if let (Some(seed), Some(size)) = (args.seed, args.patch_size) {
        sample_plan(seed, size, img.height(), img.width(), img.pattern())?
    } else {
        let mut steps = Vec::new();
        if args.hflip {
            steps.push(AugStep::HFlip);
        }
        if args.vflip {
            steps.push(AugStep::VFlip);
        }
        if args.transpose {
            steps.push(AugStep::Transpose);
        }
        if let Some([top, left, height, width]) = args.patch {
            steps.push(AugStep::Patch {
                top,
                left,
                height,
                width,
            });
        }
        AugPlan::new(steps)
    };
    let out = apply_plan(&img, &plan)?;
    save_raw(&out, None, &RawFilePair::new(&args.output))?;
    println!("{}", plan.to_json());
    Ok(())
}

pub fn pack_roundtrip(args: PackRoundtripArgs) -> Result<()> {
    let (img, _) = load(&args.input)?;
    let packed = pack(&img);
    let back = unpack(&packed);
    if back != img {
        bail!("unpack(pack(x)) differs from x");
    }
    if pack(&back) != packed {
        bail!("pack(unpack(p)) differs from p");
    }
    let (ph, pw) = packed.plane_dims();
    println!(
        "ok: {}x{} {} -> 4 planes of {ph}x{pw}",
        img.height(),
        img.width(),
        img.pattern()
    );
    Ok(())
}

pub fn simulate(args: SimulateArgs) -> Result<()> {
    let (h, w) = args.size;
    let clean = mosaic(&gen_scene(args.seed, h, w)?, args.pattern);
    if let Some(path) = &args.clean {
        save_raw(&clean, None, &RawFilePair::new(path))?;
    }
    let out = match args.noise {
        Some((read, shot)) => add_noise(
            &clean,
            NoiseParams::new(read, shot)?,
            args.noise_seed.unwrap_or(args.seed),
        ),
        None => clean,
    };
    save_raw(&out, None, &RawFilePair::new(&args.output))?;
    Ok(())
}

pub fn denoise(args: DenoiseArgs) -> Result<()> {
    let (img, _) = load(&args.input)?;
    let out = denoise_pipeline(&img, args.work_pattern, &args.filter)?;
    save_raw(&out, None, &RawFilePair::new(&args.output))?;
    Ok(())
}

pub fn demosaic(args: DemosaicArgs) -> Result<()> {
    let (img, _) = load(&args.input)?;
    save_ppm(&demosaic_bilinear(&img)?, &args.output)?;
    Ok(())
}

pub fn metrics(args: MetricsArgs) -> Result<()> {
    let (reference, _) = load(&args.reference)?;
    let (img, _) = load(&args.input)?;
    println!("{}", report(&reference, &img)?.to_json_line());
    Ok(())
}

pub fn baseline_demo(args: BaselineDemoArgs) -> Result<()> {
    let seeds: Vec<u64> = (args.seed..args.seed.saturating_add(args.count)).collect();
    if seeds.is_empty() {
        bail!("--count must be at least 1");
    }
    let rep = run_baseline_demo(&seeds, args.size)?;
    println!("{}", serde_json::to_string_pretty(&rep)?);
    Ok(())
}
