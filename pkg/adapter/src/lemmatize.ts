/**
 * Penn-tag-aware lemmatizer.
 *
 * Verbs go through the en-inflectors conjugation tables; plural nouns are
 * singularized by suffix rules plus an irregulars list (the inflector
 * library mishandles some common plurals, e.g. "fees").
 */

import { Inflectors } from "en-inflectors";

const IRREGULAR_NOUNS: Record<string, string> = {
  people: "people",
  children: "child",
  men: "man",
  women: "woman",
  feet: "foot",
  teeth: "tooth",
  mice: "mouse",
  data: "data",
  media: "media",
  series: "series",
  species: "species",
  analyses: "analysis",
  criteria: "criterion",
};

const UNCHANGED_SUFFIXES = ["ss", "us", "is"];

export function singularize(word: string): string {
  const lower = word.toLowerCase();
  if (IRREGULAR_NOUNS[lower] !== undefined) return IRREGULAR_NOUNS[lower];
  for (const suffix of UNCHANGED_SUFFIXES) {
    if (lower.endsWith(suffix)) return lower;
  }
  if (lower.endsWith("ies") && lower.length > 4) return lower.slice(0, -3) + "y";
  if (/(xes|zes|ches|shes|sses)$/.test(lower)) return lower.slice(0, -2);
  if (lower.endsWith("ses") && lower.length > 4) return lower.slice(0, -2);
  if (lower.endsWith("s") && !lower.endsWith("'s")) return lower.slice(0, -1);
  return lower;
}

export function verbBase(word: string): string {
  const lower = word.toLowerCase();
  if (lower === "is" || lower === "are" || lower === "was" || lower === "were"
      || lower === "been" || lower === "being" || lower === "am") {
    return "be";
  }
  if (lower === "'s") return "be";
  if (lower === "n't") return "not";
  try {
    const base = new Inflectors(lower).toPresent();
    if (base && /^[a-z'-]+$/.test(base)) return base;
  } catch {
    // fall through to suffix rules
  }
  if (lower.endsWith("ing") && lower.length > 4) return lower.slice(0, -3);
  if (lower.endsWith("ied") && lower.length > 4) return lower.slice(0, -3) + "y";
  if (lower.endsWith("ed") && lower.length > 3) return lower.slice(0, -2);
  if (lower.endsWith("s") && lower.length > 2) return singularize(lower);
  return lower;
}

export function lemmatize(word: string, pennTag: string): string {
  const lower = word.toLowerCase();
  if (lower === "n't") return "not";
  if (pennTag === "NNS" || pennTag === "NNPS") {
    // keep proper-noun capitalization, singularize the form
    const singular = singularize(word);
    return pennTag === "NNPS" && /^[A-Z]/.test(word)
      ? word.charAt(0) + singular.slice(1)
      : singular;
  }
  if (pennTag === "NNP") return word;
  if (pennTag.startsWith("V")) {
    return pennTag === "VB" || pennTag === "VBP" ? lower : verbBase(word);
  }
  if (pennTag === "MD") return lower;
  return lower;
}
