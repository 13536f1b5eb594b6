import { ApiClient, ApiError } from "./api.js";
import { h, termText } from "./dom.js";
import { ProofNode } from "./types.js";

/** The interactive prover: a proof tree the student closes node by node
 * by dropping rules on open goals.
 *
 * Every semantic decision (does the rule fit, which nodes are complete,
 * what a substitution does to the tree) comes from the service; this view
 * only renders the tree it is given and forwards gestures.
 */
export class ProofView {
  tree: ProofNode | null = null;
  proofId: string | null = null;
  private pending = false;
  private dialogDismissed = false;

  constructor(
    private readonly api: ApiClient,
    private readonly container: HTMLElement,
    readonly onchange: () => void = () => {},
  ) {}

  async start(workspace: string, goal: string): Promise<void> {
    const created = await this.api.createProof(workspace, goal);
    this.proofId = created.proof_id;
    this.tree = created.tree;
    this.dialogDismissed = false;
    this.render();
  }

  /** Re-attach to an existing session (page reload): the server's tree is
   * the only state there is. */
  async load(pid: string): Promise<void> {
    const fetched = await this.api.getProof(pid);
    this.proofId = pid;
    this.tree = fetched.tree;
    this.dialogDismissed = false;
    this.render();
  }

  /** Apply the workspace rule at ruleIndex to the node at path (what a
   * drop gesture triggers).  Returns false when the service rejected the
   * unification; the tree is left exactly as the server returned it. */
  async applyRule(path: number[], ruleIndex: number): Promise<boolean> {
    if (!this.proofId || this.pending) return false;
    this.pending = true;
    this.render();
    try {
      const result = await this.api.applyRule(this.proofId, path, ruleIndex);
      this.tree = result.tree;
      return true;
    } catch (error) {
      if (error instanceof ApiError && error.tree) {
        this.tree = error.tree; // unchanged tree from the server
        this.bounce(path);
        return false;
      }
      throw error;
    } finally {
      this.pending = false;
      this.render();
      this.onchange();
    }
  }

  async substitute(variable: string, term: string): Promise<string | null> {
    if (!this.proofId || this.pending) return "busy";
    this.pending = true;
    try {
      const result = await this.api.substitute(this.proofId, variable, term);
      this.tree = result.tree;
      return null;
    } catch (error) {
      if (error instanceof ApiError) return error.body.message;
      throw error;
    } finally {
      this.pending = false;
      this.render();
      this.onchange();
    }
  }

  async undoLast(): Promise<string | null> {
    if (!this.proofId || this.pending) return "busy";
    this.pending = true;
    try {
      const result = await this.api.undo(this.proofId);
      this.tree = result.tree;
      this.dialogDismissed = false;
      return null;
    } catch (error) {
      if (error instanceof ApiError) return error.body.message;
      throw error;
    } finally {
      this.pending = false;
      this.render();
      this.onchange();
    }
  }

  private rejectedPath: string | null = null;

  private bounce(path: number[]): void {
    // flagged on the next render; cleared after the animation interval
    this.rejectedPath = path.join(".");
    setTimeout(() => {
      this.rejectedPath = null;
      this.render();
    }, 400);
  }

  render(): void {
    this.container.textContent = "";
    if (!this.tree) {
      this.container.append(
        h("p", { class: "hint" }, "Enter a goal above and start proving."),
      );
      return;
    }
    this.container.append(this.renderNode(this.tree, []));
    this.container.append(this.renderControls());
    if (this.tree.status === "complete" && !this.dialogDismissed) {
      this.container.append(this.successDialog());
    }
  }

  private renderNode(node: ProofNode, path: number[]): HTMLElement {
    const key = path.join(".");
    const open = node.applied_rule === null;
    const card = h(
      "div",
      {
        class: [
          "proof-node",
          node.status === "complete" ? "status-complete" : "status-open",
          open ? "droppable" : "closed",
          this.pending ? "pending" : "",
          this.rejectedPath === key ? "rejected" : "",
        ]
          .filter(Boolean)
          .join(" "),
        "data-path": key,
        "data-status": node.status,
      },
      termText(node.goal),
      node.applied_rule
        ? h("div", { class: "applied-rule" }, termText(node.applied_rule))
        : null,
    );
    card.addEventListener("dragover", (event) => {
      if (open && !this.pending) event.preventDefault();
    });
    card.addEventListener("drop", (event) => {
      event.preventDefault();
      event.stopPropagation();
      const dragged = (event as DragEvent).dataTransfer?.getData("text/nanolog-rule");
      if (dragged === undefined || dragged === "" || this.pending) return;
      void this.applyRule(path, Number(dragged));
    });
    const wrapper = h("div", { class: "proof-subtree" }, card);
    if (node.children.length > 0) {
      const children = h("div", { class: "proof-children" });
      node.children.forEach((child, index) => {
        children.append(this.renderNode(child, [...path, index]));
      });
      wrapper.append(children);
    }
    return wrapper;
  }

  private renderControls(): HTMLElement {
    const varInput = h("input", {
      class: "subst-var",
      placeholder: "variable, e.g. Z.1",
    }) as HTMLInputElement;
    const termInput = h("input", {
      class: "subst-term",
      placeholder: "term, e.g. bob",
    }) as HTMLInputElement;
    const message = h("span", { class: "subst-message" });
    const apply = h(
      "button",
      {
        class: "subst-apply",
        onclick: () => {
          void this.substitute(varInput.value.trim(), termInput.value.trim()).then(
            (error) => {
              if (error) message.textContent = error;
            },
          );
        },
      },
      "Substitute",
    );
    const undoButton = h(
      "button",
      {
        class: "undo",
        onclick: () => {
          void this.undoLast().then((error) => {
            if (error) message.textContent = error;
          });
        },
      },
      "Undo",
    );
    return h(
      "div",
      { class: "proof-controls" },
      varInput,
      h("span", {}, ":="),
      termInput,
      apply,
      undoButton,
      message,
    );
  }

  private successDialog(): HTMLElement {
    return h(
      "div",
      { class: "success-dialog", role: "dialog" },
      h("div", { class: "success-box" },
        h("p", {}, "Proof complete: every goal is closed. Congratulations!"),
        h("button", { onclick: (event: Event) => {
          this.dialogDismissed = true;
          (event.target as HTMLElement).closest(".success-dialog")?.remove();
        } }, "Close"),
      ),
    );
  }
}
