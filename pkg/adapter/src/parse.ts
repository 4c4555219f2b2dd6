/**
 * Wrapper around the en-pos tagger and the en-parse dependency parser.
 *
 * The parser's labels are mapped onto Universal Dependencies names and the
 * raw attachments are repaired into a guaranteed single-rooted tree: out of
 * range or self-referential heads detach, cycles break at their entry
 * point, and every detached node re-attaches to the chosen root.
 */

import { parse as enParse } from "en-parse";
import { Tag } from "en-pos";

import { lemmatize } from "./lemmatize";

export interface ParsedToken {
  index: number;        // 1-based
  form: string;
  lemma: string;
  upos: string;
  xpos: string;
  feats: string;
  head: number;         // 0 = root
  deprel: string;
}

export interface AdapterConfig {
  model?: string;
  encoding?: BufferEncoding;      // input file encoding, utf-8 by default
  splitSentences?: boolean;       // split multi-sentence lines before parsing
}

export const DEFAULT_MODEL = "en-parse";

const PENN_TO_UPOS: Record<string, string> = {
  NN: "NOUN", NNS: "NOUN", NNP: "PROPN", NNPS: "PROPN",
  VB: "VERB", VBD: "VERB", VBG: "VERB", VBN: "VERB", VBP: "VERB", VBZ: "VERB",
  MD: "AUX",
  JJ: "ADJ", JJR: "ADJ", JJS: "ADJ",
  RB: "ADV", RBR: "ADV", RBS: "ADV", WRB: "ADV",
  PRP: "PRON", "PRP$": "PRON", WP: "PRON", "WP$": "PRON", EX: "PRON",
  DT: "DET", PDT: "DET", WDT: "DET",
  IN: "ADP", TO: "PART", POS: "PART", RP: "ADP",
  CC: "CCONJ", CD: "NUM", UH: "INTJ", FW: "X", LS: "X", SYM: "SYM",
};

const LABEL_TO_UD: Record<string, string> = {
  ROOT: "root",
  NSUBJ: "nsubj", NSUBJPASS: "nsubj:pass", CSUBJ: "csubj",
  DOBJ: "obj", IOBJ: "iobj", POBJ: "obj",
  AUX: "aux", AUXPASS: "aux:pass", COP: "cop",
  ADVMOD: "advmod", AMOD: "amod", NUMMOD: "nummod", APPOS: "appos",
  DET: "det", CASE: "case", CC: "cc", CONJ: "conj",
  CCOMP: "ccomp", XCOMP: "xcomp", ACL: "acl", ADVCL: "advcl",
  NMOD: "nmod", OBL: "obl", NEG: "advmod",
  COMPMARK: "mark", ADVMARK: "mark", MARK: "mark",
  PRT: "compound:prt", COMPOUND: "compound", MWE: "fixed",
  EXPL: "expl", DISCOURSE: "discourse", INTERJ: "discourse",
  PUNCT: "punct", PUNC: "punct",
  DEP: "dep", EXT: "dep", PARATAXIS: "parataxis",
};

function toUpos(pennTag: string, form: string): string {
  if (/^[^A-Za-z0-9]+$/.test(form)) return "PUNCT";
  return PENN_TO_UPOS[pennTag] ?? "X";
}

// the parser's catch-all labels, best refined from the POS tag
const VAGUE_BY_XPOS: Record<string, string> = {
  DT: "det", PDT: "det", "PRP$": "nmod:poss",
  JJ: "amod", JJR: "amod", JJS: "amod",
  CD: "nummod", POS: "case",
  NN: "compound", NNS: "compound", NNP: "compound", NNPS: "compound",
  RB: "advmod", IN: "case", TO: "mark", CC: "cc", MD: "aux",
};

function toUdLabel(label: string, form: string, xpos: string): string {
  if (/^[^A-Za-z0-9]+$/.test(form)) return "punct";
  if (xpos === "PRP$") return "nmod:poss";
  if (xpos === "POS") return "case";
  const upper = label.toUpperCase();
  if (upper === "EXT" || upper === "DEP") {
    return VAGUE_BY_XPOS[xpos] ?? "dep";
  }
  const mapped = LABEL_TO_UD[upper];
  return mapped ?? "dep";
}

/**
 * Post-tagging repair: a token the lexicon calls JJ/NN directly after a
 * modal (allowing intervening adverbs) or after "to" reads as a verb.
 */
export function repairTags(words: string[], tags: string[]): string[] {
  const out = tags.slice();
  for (let i = 0; i < out.length; i++) {
    if (out[i] !== "JJ" && out[i] !== "NN") continue;
    let j = i - 1;
    while (j >= 0 && out[j] === "RB") j--;
    if (j >= 0 && (out[j] === "MD" || out[j] === "TO")) {
      out[i] = "VB";
    }
  }
  return out;
}

function featsFor(form: string, xpos: string): string {
  if (xpos === "PRP$") return "Poss=Yes";
  const lower = form.toLowerCase();
  if (lower === "not" || lower === "n't") return "Polarity=Neg";
  return "_";
}

/** Repair raw head indices (0-based, -1 root) into a single-rooted tree. */
export function repairTree(heads: number[], rootHint: number[]): number[] {
  const n = heads.length;
  const fixed = heads.map((h, i) =>
    Number.isInteger(h) && h >= -1 && h < n && h !== i ? h : -1);

  // break cycles: walk each node upward, detaching the first repeat
  for (let i = 0; i < n; i++) {
    const seen = new Set<number>([i]);
    let cur = fixed[i];
    while (cur !== -1) {
      if (seen.has(cur)) {
        fixed[cur] = -1;
        break;
      }
      seen.add(cur);
      cur = fixed[cur];
    }
  }

  const rootCandidates = fixed
    .map((h, i) => ({ h, i }))
    .filter(({ h }) => h === -1)
    .map(({ i }) => i);
  let root = rootCandidates.find((i) => rootHint.includes(i));
  if (root === undefined) root = rootCandidates[0];
  if (root === undefined) {
    root = 0;
    fixed[0] = -1;
  }
  for (const i of rootCandidates) {
    if (i !== root) fixed[i] = root;
  }
  return fixed;
}

export function parseSentence(words: string[], config?: AdapterConfig): ParsedToken[] {
  const model = config?.model ?? DEFAULT_MODEL;
  if (model !== DEFAULT_MODEL) {
    throw new Error(`unknown parser model "${model}" (available: ${DEFAULT_MODEL})`);
  }
  if (words.length === 0) return [];

  const tags: string[] = repairTags(words, new Tag(words).initial().smooth().tags);
  const nodes = enParse(tags, words);
  const rawHeads = nodes.map((node) => node.parent);
  const rootHint = nodes
    .map((node, i) => ({ label: node.label, i }))
    .filter(({ label }) => label.toUpperCase() === "ROOT")
    .map(({ i }) => i);
  const heads = repairTree(rawHeads, rootHint);

  return words.map((form, i) => {
    const xpos = tags[i] ?? "NN";
    const isRoot = heads[i] === -1;
    const label = isRoot ? "root" : toUdLabel(nodes[i].label, form, xpos);
    return {
      index: i + 1,
      form,
      lemma: lemmatize(form, xpos),
      upos: toUpos(xpos, form),
      xpos,
      feats: featsFor(form, xpos),
      head: heads[i] + 1,
      deprel: isRoot ? "root" : label === "root" ? "dep" : label,
    };
  });
}
