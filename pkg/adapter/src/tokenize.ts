/**
 * Word tokenizer for one sentence of plain text.
 *
 * Splits off surrounding punctuation and the common English clitics
 * ('s, n't, 're, ...) so the tagger sees normalized tokens.
 */

const CLITICS = /^(.+?)('s|'re|'ve|'ll|'d|'m|n't)$/i;
const LEADING = /^([("'\[{‘“]+)(.+)$/;
const TRAILING = /^(.+?)([)"'\]}.,;:!?‘’“”]+)$/;

export function tokenize(line: string): string[] {
  const out: string[] = [];
  for (const raw of line.trim().split(/\s+/)) {
    if (raw.length === 0) continue;
    splitToken(raw, out);
  }
  return out;
}

function splitToken(token: string, out: string[]): void {
  if (token.length === 1) {
    out.push(token);
    return;
  }
  const lead = token.match(LEADING);
  if (lead) {
    for (const ch of lead[1]) out.push(ch);
    splitToken(lead[2], out);
    return;
  }
  const trail = token.match(TRAILING);
  if (trail) {
    const tail: string[] = [];
    for (const ch of trail[2]) tail.push(ch);
    splitToken(trail[1], out);
    out.push(...tail);
    return;
  }
  const clitic = token.match(CLITICS);
  if (clitic) {
    splitToken(clitic[1], out);
    out.push(clitic[2]);
    return;
  }
  out.push(token);
}
