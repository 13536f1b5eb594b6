import { ApiClient, ApiError } from "./api.js";
import { h, termText } from "./dom.js";
import { RuleEntry } from "./types.js";

/** The workspace's rule list: draggable cards plus the add-rule field.
 * Dragging a card carries its rule index; dropping it on a proof node is
 * handled by the proof view. */
export class RulePalette {
  rules: RuleEntry[] = [];

  constructor(
    private readonly api: ApiClient,
    private readonly workspace: string,
    private readonly container: HTMLElement,
    readonly onchange: () => void = () => {},
  ) {}

  async refresh(): Promise<void> {
    this.rules = await this.api.listRules(this.workspace);
    this.render();
  }

  async addRule(text: string): Promise<string | null> {
    try {
      await this.api.addRule(this.workspace, text);
    } catch (error) {
      if (error instanceof ApiError) {
        const pos = error.body.position;
        return pos
          ? `${error.body.message} (at ${pos.line}:${pos.column})`
          : error.body.message;
      }
      throw error;
    }
    await this.refresh();
    this.onchange();
    return null;
  }

  async deleteRule(index: number): Promise<void> {
    await this.api.deleteRule(this.workspace, index);
    await this.refresh();
    this.onchange();
  }

  render(): void {
    this.container.textContent = "";
    const list = h("div", { class: "rule-list" });
    for (const rule of this.rules) {
      const card = h(
        "div",
        { class: "rule-card", draggable: "true", "data-rule-index": String(rule.index) },
        termText(rule.text),
        h(
          "button",
          {
            class: "rule-delete",
            title: "delete rule",
            onclick: () => void this.deleteRule(rule.index),
          },
          "×",
        ),
      );
      card.addEventListener("dragstart", (event) => {
        (event as DragEvent).dataTransfer?.setData(
          "text/nanolog-rule",
          String(rule.index),
        );
      });
      list.append(card);
    }
    const input = h("input", {
      class: "rule-input",
      placeholder: "new rule, e.g. parent(alice,bob).",
    }) as HTMLInputElement;
    const message = h("div", { class: "rule-message" });
    const submit = () => {
      void this.addRule(input.value.trim()).then((error) => {
        message.textContent = error ?? "";
        if (!error) input.value = "";
      });
    };
    input.addEventListener("keydown", (event) => {
      if ((event as KeyboardEvent).key === "Enter") submit();
    });
    const form = h(
      "div",
      { class: "rule-add" },
      input,
      h("button", { class: "rule-add-button", onclick: submit }, "Add rule"),
      message,
    );
    this.container.append(h("h2", {}, "Rules"), list, form);
  }
}
