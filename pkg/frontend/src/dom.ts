/** Tiny DOM construction helper. */

type Child = Node | string | null | undefined;

export function h(
  tag: string,
  attrs: Record<string, string | boolean | EventListener> = {},
  ...children: Child[]
): HTMLElement {
  const el = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    if (typeof value === "function") {
      el.addEventListener(key.replace(/^on/, ""), value);
    } else if (typeof value === "boolean") {
      if (value) el.setAttribute(key, "");
    } else {
      el.setAttribute(key, value);
    }
  }
  for (const child of children) {
    if (child === null || child === undefined) continue;
    el.append(typeof child === "string" ? document.createTextNode(child) : child);
  }
  return el;
}

/** Render a goal or rule, styling renamed-variable suffixes (X.3) in a
 * subdued span; the suffix stays visible, it is what distinguishes one
 * rule instance's variables from another's. */
export function termText(text: string): HTMLElement {
  const span = h("span", { class: "term" });
  const pattern = /[A-Z][A-Za-z0-9_]*(?:\.[0-9]+)+/g;
  let last = 0;
  for (const match of text.matchAll(pattern)) {
    const start = match.index ?? 0;
    if (start > last) span.append(text.slice(last, start));
    const whole = match[0];
    const dot = whole.indexOf(".");
    span.append(whole.slice(0, dot));
    span.append(h("span", { class: "rename-suffix" }, whole.slice(dot)));
    last = start + whole.length;
  }
  if (last < text.length) span.append(text.slice(last));
  return span;
}

/** Top-level premise count of a rule's printed form (display layout only;
 * all real semantics come from the service). */
export function premiseCount(ruleText: string): number {
  const arrow = ruleText.indexOf(":-");
  if (arrow < 0) return 0;
  const body = ruleText.slice(arrow + 2).replace(/\.\s*$/, "");
  let depth = 0;
  let count = 1;
  for (const ch of body) {
    if (ch === "(") depth += 1;
    else if (ch === ")") depth -= 1;
    else if (ch === "," && depth === 0) count += 1;
  }
  return count;
}
