import { ApiClient, ApiError } from "./api.js";
import { h } from "./dom.js";
import { InterpreterView } from "./interpreterView.js";
import { ProofView } from "./proofView.js";
import { RulePalette } from "./rulePalette.js";

const WORKSPACE_KEY = "nanolog-workspace";

/** Application shell: workspace picker, then prover + interpreter tabs
 * with the rule palette on the right.  The open proof's id lives in the
 * URL hash, so a full reload re-renders the identical tree from the
 * server. */
export class App {
  readonly api: ApiClient;
  workspace: string | null = null;
  tab: "prover" | "interpreter" = "prover";
  proofView: ProofView | null = null;
  interpreterView: InterpreterView | null = null;
  palette: RulePalette | null = null;

  constructor(private readonly root: HTMLElement, baseUrl = "") {
    this.api = new ApiClient(baseUrl);
  }

  async boot(): Promise<void> {
    const fromHash = this.parseHash();
    const workspace = fromHash.workspace ?? localStorage.getItem(WORKSPACE_KEY);
    if (workspace) {
      try {
        await this.openWorkspace(workspace, fromHash.proofId);
        return;
      } catch {
        // stale id; fall through to the picker
      }
    }
    this.renderPicker();
  }

  private parseHash(): { workspace: string | null; proofId: string | null } {
    const match = location.hash.match(/^#\/w\/([a-z0-9-]+)(?:\/proof\/([A-Za-z0-9_-]+))?/);
    return { workspace: match?.[1] ?? null, proofId: match?.[2] ?? null };
  }

  private setHash(): void {
    if (!this.workspace) return;
    const proof = this.proofView?.proofId;
    location.hash = proof
      ? `#/w/${this.workspace}/proof/${proof}`
      : `#/w/${this.workspace}`;
  }

  async openWorkspace(id: string, proofId: string | null = null): Promise<void> {
    await this.api.listRules(id); // 404 -> throws, picker stays
    this.workspace = id;
    localStorage.setItem(WORKSPACE_KEY, id);
    this.renderShell();
    await this.palette!.refresh();
    if (proofId) {
      this.tab = "prover";
      await this.proofView!.load(proofId);
    }
    this.setHash();
  }

  async createWorkspace(id: string): Promise<void> {
    await this.api.createWorkspace(id);
    await this.openWorkspace(id);
  }

  // -- rendering ---------------------------------------------------------

  private renderPicker(): void {
    this.root.textContent = "";
    const input = h("input", {
      class: "workspace-input",
      placeholder: "workspace id, e.g. alice-team",
    }) as HTMLInputElement;
    const message = h("div", { class: "picker-message" });
    const act = (create: boolean) => {
      const id = input.value.trim();
      const action = create ? this.createWorkspace(id) : this.openWorkspace(id);
      void action.catch((error) => {
        message.textContent =
          error instanceof ApiError ? error.body.message : String(error);
      });
    };
    this.root.append(
      h(
        "div",
        { class: "picker" },
        h("h1", {}, "nanolog"),
        h("p", {}, "Open your playground: a workspace keeps your rules."),
        input,
        h("div", { class: "picker-buttons" },
          h("button", { class: "open-workspace", onclick: () => act(false) }, "Open"),
          h("button", { class: "create-workspace", onclick: () => act(true) }, "Create"),
        ),
        message,
      ),
    );
  }

  private renderShell(): void {
    this.root.textContent = "";
    const proverPane = h("div", { class: "pane prover-pane" });
    const interpreterPane = h("div", { class: "pane interpreter-pane hidden" });
    const paletteEl = h("aside", { class: "palette" });

    const tabs = h(
      "nav",
      { class: "tabs" },
      h(
        "button",
        { class: "tab tab-prover active", onclick: () => switchTab("prover") },
        "Prover",
      ),
      h(
        "button",
        { class: "tab tab-interpreter", onclick: () => switchTab("interpreter") },
        "Interpreter",
      ),
      h("span", { class: "workspace-name" }, `workspace: ${this.workspace}`),
    );
    const switchTab = (tab: "prover" | "interpreter") => {
      this.tab = tab;
      proverPane.classList.toggle("hidden", tab !== "prover");
      interpreterPane.classList.toggle("hidden", tab !== "interpreter");
      tabs.querySelector(".tab-prover")?.classList.toggle("active", tab === "prover");
      tabs
        .querySelector(".tab-interpreter")
        ?.classList.toggle("active", tab === "interpreter");
    };

    // prover pane: goal entry + proof tree
    const goalInput = h("input", {
      class: "goal-input",
      placeholder: "goal to prove, e.g. grandparent(alice,Q)",
    }) as HTMLInputElement;
    const goalMessage = h("span", { class: "goal-message" });
    const proofContainer = h("div", { class: "proof-container" });
    this.proofView = new ProofView(this.api, proofContainer, () => this.setHash());
    const startButton = h(
      "button",
      {
        class: "start-proof",
        onclick: () => {
          void this.proofView!
            .start(this.workspace!, goalInput.value.trim())
            .then(() => {
              goalMessage.textContent = "";
              this.setHash();
            })
            .catch((error) => {
              goalMessage.textContent =
                error instanceof ApiError ? error.body.message : String(error);
            });
        },
      },
      "Prove",
    );
    proverPane.append(
      h("div", { class: "goal-row" }, goalInput, startButton, goalMessage),
      proofContainer,
    );
    this.proofView.render();

    // interpreter pane: query entry + results
    const queryInput = h("input", {
      class: "query-input",
      placeholder: "query, e.g. grandparent(alice,Q)",
    }) as HTMLInputElement;
    const strategySelect = h("select", { class: "strategy-select" }) as HTMLSelectElement;
    for (const value of ["dfs", "bfs", "iddfs"]) {
      strategySelect.append(h("option", { value }, value));
    }
    const resultsEl = h("div", { class: "results" });
    this.interpreterView = new InterpreterView(this.api, this.workspace!, resultsEl);
    const runButton = h(
      "button",
      {
        class: "run-query",
        onclick: () => {
          void this.interpreterView!.runQuery(
            queryInput.value.trim(),
            strategySelect.value as "dfs" | "bfs" | "iddfs",
          );
        },
      },
      "Run",
    );
    queryInput.addEventListener("keydown", (event) => {
      if ((event as KeyboardEvent).key === "Enter") runButton.click();
    });
    interpreterPane.append(
      h("div", { class: "query-row" }, queryInput, strategySelect, runButton),
      resultsEl,
    );

    this.palette = new RulePalette(this.api, this.workspace!, paletteEl);

    this.root.append(
      tabs,
      h("main", { class: "layout" },
        h("section", { class: "panes" }, proverPane, interpreterPane),
        paletteEl,
      ),
    );
  }
}

declare global {
  interface Window {
    nanologApp?: App;
  }
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  const app = new App(document.getElementById("app")!);
  window.nanologApp = app;
  void app.boot();
}
