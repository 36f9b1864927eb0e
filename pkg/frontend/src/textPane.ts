import type { ClusterState, TaskDescriptorView } from "./types";

export interface TextPaneCallbacks {
  /** Token clicked: highlight its node in the graph pane. */
  onTokenClick(id: number): void;
}

/**
 * Left pane for clustering tasks: the gatherer's HTML fragment rendered
 * verbatim, followed by the indexed mention tokens. Token background colors
 * always mirror the node colors from the latest snapshot.
 */
export class TextPane {
  private readonly htmlHost: HTMLElement;
  private readonly mentionHost: HTMLElement;
  private chips = new Map<number, HTMLElement>();

  constructor(
    container: HTMLElement,
    private readonly callbacks: TextPaneCallbacks,
  ) {
    this.htmlHost = document.createElement("div");
    this.htmlHost.className = "gatherer-html";
    this.mentionHost = document.createElement("div");
    this.mentionHost.className = "mention-strip";
    container.append(this.htmlHost, this.mentionHost);
  }

  renderTask(task: TaskDescriptorView): void {
    this.htmlHost.innerHTML = task.display_html;
    this.mentionHost.replaceChildren();
    this.chips.clear();
    const mentions = [...(task.payload.mentions ?? [])].sort(
      (a, b) => a.token_index - b.token_index,
    );
    for (const mention of mentions) {
      const chip = document.createElement("span");
      chip.className = "mention-chip";
      chip.dataset.mentionId = String(mention.id);
      const index = document.createElement("sup");
      index.textContent = String(mention.id);
      chip.append(mention.surface, index);
      chip.addEventListener("click", () =>
        this.callbacks.onTokenClick(mention.id),
      );
      this.mentionHost.appendChild(chip);
      this.chips.set(mention.id, chip);
    }
  }

  /** Mirror node colors onto the token backgrounds. */
  updateColors(state: ClusterState): void {
    for (const mention of state.mentions) {
      const chip = this.chips.get(mention.id);
      if (chip) chip.style.backgroundColor = mention.color;
    }
  }

  /** Drag started in the graph: mark the token and scroll it into view. */
  focusToken(id: number | null): void {
    for (const [chipId, chip] of this.chips) {
      chip.classList.toggle("focused", chipId === id);
    }
    if (id !== null) {
      this.chips.get(id)?.scrollIntoView?.({ block: "center" });
    }
  }

  colorOf(id: number): string {
    return this.chips.get(id)?.style.backgroundColor ?? "";
  }
}
