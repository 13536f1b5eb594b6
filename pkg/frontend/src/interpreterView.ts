import { ApiClient, ApiError } from "./api.js";
import { h, premiseCount, termText } from "./dom.js";
import { QueryResponse, Solution } from "./types.js";

/** Interpreter console: run a query, list each solution's bindings with an
 * expandable trace, and surface budget hits as a banner instead of
 * silence. */
export class InterpreterView {
  result: QueryResponse | null = null;
  error: string | null = null;

  constructor(
    private readonly api: ApiClient,
    private readonly workspace: string,
    private readonly container: HTMLElement,
  ) {}

  async runQuery(goals: string, strategy: "dfs" | "bfs" | "iddfs" = "dfs"): Promise<void> {
    this.error = null;
    try {
      this.result = await this.api.query(this.workspace, goals, { strategy });
    } catch (err) {
      this.result = null;
      if (err instanceof ApiError) {
        const pos = err.body.position;
        this.error = pos
          ? `${err.body.message} (at ${pos.line}:${pos.column})`
          : err.body.message;
      } else {
        throw err;
      }
    }
    this.render();
  }

  render(): void {
    this.container.textContent = "";
    if (this.error) {
      this.container.append(h("div", { class: "query-error" }, this.error));
      return;
    }
    if (!this.result) return;
    if (this.result.budget_hit) {
      this.container.append(
        h(
          "div",
          { class: "budget-banner" },
          `Search budget reached (${this.result.budget_hit}); ` +
            `results below may be incomplete.`,
        ),
      );
    }
    if (this.result.solutions.length === 0) {
      this.container.append(h("p", { class: "no-solutions" }, "No solutions."));
    }
    this.result.solutions.forEach((solution, index) => {
      this.container.append(this.solutionCard(solution, index));
    });
  }

  private solutionCard(solution: Solution, index: number): HTMLElement {
    const bindings = Object.entries(solution.bindings);
    const lines =
      bindings.length === 0
        ? [h("div", { class: "binding" }, "true.")]
        : bindings.map(([name, term]) =>
            h("div", { class: "binding" }, `${name} = `, termText(term)),
          );
    const trace = h("div", { class: "trace" });
    // Indentation replays the goal stack: a rule with k premises pushes k
    // child slots at depth+1 (pure layout; counts come from the rule text).
    const depths = [0];
    for (const step of solution.trace) {
      const depth = depths.shift() ?? 0;
      const row = h("div", { class: "trace-step" }, termText(step.rule));
      row.style.marginLeft = `${depth * 1.25}rem`;
      row.title = `applied to ${step.goal}`;
      trace.append(row);
      depths.unshift(...Array(premiseCount(step.rule)).fill(depth + 1));
    }
    const details = h("details", { class: "trace-details" });
    details.append(h("summary", {}, "proof trace"), trace);
    return h(
      "div",
      { class: "solution-card" },
      h("div", { class: "solution-title" }, `Solution ${index + 1}`),
      solution.cyclic ? h("span", { class: "cyclic-badge" }, "cyclic") : null,
      ...lines,
      details,
    );
  }
}
