//! `--config` files: `key = value` lines spliced into the argument list.

use std::fs;

use clap::CommandFactory;

use crate::args::Cli;

/// Removes `--config <file>` from `args` and inserts the file's entries as
/// flags right after the subcommand. Keys already given on the command line
/// are skipped, so flags override the file.
pub(crate) fn expand(mut args: Vec<String>) -> Result<Vec<String>, String> {
    let Some(path) = take_config(&mut args)? else {
        return Ok(args);
    };
    let text = fs::read_to_string(&path).map_err(|e| format!("cannot read {path}: {e}"))?;

    let root = Cli::command();
    let (sub_pos, sub) = args
        .iter()
        .enumerate()
        .skip(1)
        .find_map(|(i, a)| root.find_subcommand(a).map(|s| (i, s)))
        .ok_or_else(|| "--config needs a subcommand".to_string())?;
    let given = &args[sub_pos + 1..];

    let mut spliced = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("{path}:{}: expected `key = value`", lineno + 1))?;
        let key = key.trim().trim_start_matches("--");
        let value = value.trim();
        let arg = sub
            .get_arguments()
            .find(|a| a.get_long() == Some(key))
            .ok_or_else(|| {
                format!("{path}:{}: `{key}` is not a flag of `{}`", lineno + 1, sub.get_name())
            })?;
        let long = format!("--{key}");
        let short = arg.get_short().map(|c| format!("-{c}"));
        let on_command_line = given.iter().any(|a| {
            a == &long
                || a.starts_with(&format!("{long}="))
                || short.as_deref().is_some_and(|s| a.starts_with(s))
        });
        if on_command_line {
            continue;
        }
        if arg.get_action().takes_values() {
            spliced.push(format!("{long}={value}"));
        } else {
            match value {
                "true" => spliced.push(long),
                "false" => {}
                _ => {
                    return Err(format!(
                        "{path}:{}: `{key}` is a switch, expected true or false",
                        lineno + 1
                    ))
                }
            }
        }
    }
    args.splice(sub_pos + 1..sub_pos + 1, spliced);
    Ok(args)
}

fn take_config(args: &mut Vec<String>) -> Result<Option<String>, String> {
    let Some(i) = args
        .iter()
        .position(|a| a == "--config" || a.starts_with("--config="))
    else {
        return Ok(None);
    };
    let flag = args.remove(i);
    let path = match flag.strip_prefix("--config=") {
        Some(p) => p.to_string(),
        None => {
            if i >= args.len() {
                return Err("--config needs a file name".into());
            }
            args.remove(i)
        }
    };
    if args.iter().any(|a| a == "--config" || a.starts_with("--config=")) {
        return Err("--config may be given only once".into());
    }
    Ok(Some(path))
}
