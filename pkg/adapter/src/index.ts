/**
 * Text to CoNLL-U conversion: one input line = one relevant sentence.
 *
 * Relevance selection and document-structure analysis are the caller's
 * job; this is a format bridge in front of the clause extraction tool.
 */

import { document, sentenceBlock } from "./conllu";
import { AdapterConfig, DEFAULT_MODEL, parseSentence } from "./parse";
import { tokenize } from "./tokenize";

export { AdapterConfig, DEFAULT_MODEL, parseSentence } from "./parse";
export { tokenize } from "./tokenize";
export { sentenceBlock } from "./conllu";

/** Naive sentence splitter for lines that carry more than one sentence. */
export function splitSentences(line: string): string[] {
  const parts = line.split(/(?<=[.!?])\s+(?=["'(]?[A-Z])/);
  return parts.map((p) => p.trim()).filter((p) => p.length > 0);
}

export function textToConllu(text: string, config?: AdapterConfig): string {
  const lines = text.split("\n").map((l) => l.trim()).filter((l) => l.length > 0);
  const sentences = config?.splitSentences
    ? lines.flatMap(splitSentences)
    : lines;
  const blocks: string[] = [];
  sentences.forEach((sentence, i) => {
    const words = tokenize(sentence);
    if (words.length === 0) return;
    const tokens = parseSentence(words, config);
    blocks.push(sentenceBlock(String(i + 1), sentence, tokens));
  });
  return document(blocks);
}
