#!/usr/bin/env node
/**
 * parse_to_conllu <in.txt> -o <out.conllu> [--model NAME]
 *                 [--encoding ENC] [--split-sentences]
 *
 * Reads plain text, one relevant sentence per line (or free lines with
 * --split-sentences); writes CoNLL-U to the -o path, or to standard
 * output when -o is absent.
 */

import * as fs from "fs";

import { DEFAULT_MODEL, textToConllu } from "./index";

function usage(): never {
  process.stderr.write(
    "usage: parse_to_conllu <in.txt> [-o <out.conllu>] [--model NAME]"
    + " [--encoding ENC] [--split-sentences]\n");
  process.exit(2);
}

function main(argv: string[]): number {
  let input: string | undefined;
  let output: string | undefined;
  let model = DEFAULT_MODEL;
  let encoding: BufferEncoding = "utf-8";
  let split = false;

  for (let i = 0; i < argv.length; i++) {
    const arg = argv[i];
    if (arg === "-o") {
      output = argv[++i];
      if (output === undefined) usage();
    } else if (arg === "--model") {
      model = argv[++i];
      if (model === undefined) usage();
    } else if (arg === "--encoding") {
      const enc = argv[++i];
      if (enc === undefined || !Buffer.isEncoding(enc)) usage();
      encoding = enc;
    } else if (arg === "--split-sentences") {
      split = true;
    } else if (arg === "-h" || arg === "--help") {
      usage();
    } else if (arg.startsWith("-")) {
      usage();
    } else if (input === undefined) {
      input = arg;
    } else {
      usage();
    }
  }
  if (input === undefined) usage();

  let text: string;
  try {
    text = fs.readFileSync(input, encoding);
  } catch (err) {
    process.stderr.write(`error: cannot read ${input}: ${String(err)}\n`);
    return 1;
  }

  let conllu: string;
  try {
    conllu = textToConllu(text, { model, encoding, splitSentences: split });
  } catch (err) {
    process.stderr.write(`error: ${err instanceof Error ? err.message : String(err)}\n`);
    return 1;
  }

  if (output !== undefined) {
    fs.writeFileSync(output, conllu, "utf-8");
  } else {
    process.stdout.write(conllu);
  }
  return 0;
}

process.exit(main(process.argv.slice(2)));
