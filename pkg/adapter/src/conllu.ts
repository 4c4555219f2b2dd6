/** CoNLL-U emission: ten tab-separated columns, blank line per sentence. */

import { ParsedToken } from "./parse";

export function sentenceBlock(
  sentId: string,
  text: string,
  tokens: ParsedToken[],
): string {
  const lines = [`# sent_id = ${sentId}`, `# text = ${text}`];
  for (const t of tokens) {
    lines.push([
      String(t.index),
      t.form,
      t.lemma,
      t.upos,
      t.xpos,
      t.feats,
      String(t.head),
      t.deprel,
      "_",
      "_",
    ].join("\t"));
  }
  return lines.join("\n") + "\n";
}

export function document(blocks: string[]): string {
  return blocks.join("\n");
}
